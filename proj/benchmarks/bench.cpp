#include <benchmark/benchmark.h>

#include <string>
#include <utility>
#include <vector>

#include "gibbscert/coupling.hpp"
#include "gibbscert/criterion.hpp"
#include "gibbscert/gibbs.hpp"

namespace gc = gibbscert;

namespace {

gc::Graph path(std::size_t n) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 1; i < n; ++i) edges.emplace_back("v" + std::to_string(i), "v" + std::to_string(i + 1));
    return gc::build_graph(edges);
}

gc::FiniteSpinModel ising(const gc::Graph& g) {
    return gc::make_product_coupling_model(g, {"-1", "+1"}, 0.1, {0.5, 0.5}, {1.0, 1.0});
}

void BM_ExactGibbs(benchmark::State& state) {
    const auto g = path(static_cast<std::size_t>(state.range(0)));
    const auto m = ising(g);
    for (auto _ : state) benchmark::DoNotOptimize(gc::exact_gibbs(m, g));
}
BENCHMARK(BM_ExactGibbs)->DenseRange(6, 16, 2);

void BM_ApplyR(benchmark::State& state) {
    const auto g = path(static_cast<std::size_t>(state.range(0)));
    const auto m = ising(g);
    const auto mu = gc::exact_gibbs(m, g);
    const auto nu = gc::CouplingTable::product(mu, mu);
    for (auto _ : state) benchmark::DoNotOptimize(gc::apply_R(nu, 1, m));
}
BENCHMARK(BM_ApplyR)->DenseRange(4, 8, 2);

void BM_Sweep(benchmark::State& state) {
    const auto g = path(6);
    const auto m = ising(g);
    const auto mu = gc::exact_gibbs(m, g);
    const auto nu = gc::CouplingTable::product(mu, mu);
    const auto params = gc::ContractionParams{gc::estimate_kappa(m, g, 600.0), gc::uniform_edge_weights(g, 0.1), 2, 2};
    const auto cert = gc::certify(params, g, 600.0, 1.0);
    const gc::CheckContext ctx{params.kappa, params.c, 600.0, cert.M, {}};
    const auto partition = gc::greedy_color(g);
    for (auto _ : state) benchmark::DoNotOptimize(gc::sweep(nu, partition, m, ctx));
}
BENCHMARK(BM_Sweep);

void BM_KStarGrid(benchmark::State& state) {
    for (auto _ : state) {
        double acc = 0.0;
        for (int k = 1; k <= 9; ++k) {
            for (int delta = 2; delta <= 6; ++delta) {
                for (int chi = 2; chi <= delta + 1; ++chi) {
                    const double c = 0.5 / gc::int_power(delta, chi);
                    const gc::CriterionData d{0.1 * k, c, delta, chi};
                    const double K = 1.01 * gc::k_star(d.kappa_bar, c, delta, chi);
                    acc += gc::spectral_radius(gc::contraction_matrix(d, gc::a_constant(d.kappa_bar, delta, chi), K));
                }
            }
        }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_KStarGrid);

}  // namespace

BENCHMARK_MAIN();
