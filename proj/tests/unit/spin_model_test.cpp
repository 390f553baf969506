#include <gtest/gtest.h>

#include <cmath>

#include "gibbscert/spin_model.hpp"
#include "support.hpp"

namespace gibbscert {
namespace {

const std::vector<std::string> kSpins{"-1", "+1"};

FiniteSpinModel ising(const Graph& g, double beta, std::vector<double> h = {}) {
    return make_product_coupling_model(g, kSpins, beta, {}, std::move(h));
}

Graph p2() { return build_graph({{"a", "b"}}); }

TEST(Conditional, ZeroCouplingIsUniform) {
    const Graph g = build_graph(testing::path_edges(3));
    const auto m = ising(g, 0.0);
    const auto pi = conditional(m, g, 1, {{0, 1}, {2, 0}});
    EXPECT_NEAR(pi[0], 0.5, 1e-15);
    EXPECT_NEAR(pi[1], 0.5, 1e-15);
}

TEST(Conditional, SingleNeighborBoltzmannRatio) {
    const Graph g = p2();
    const auto pi = conditional(ising(g, 0.5), g, 0, {{1, 1}});
    const double oracle = std::exp(0.5) / (std::exp(0.5) + std::exp(-0.5));
    EXPECT_NEAR(pi[1], oracle, 1e-15);
    EXPECT_NEAR(pi[1], 0.7311, 1e-4);
}

TEST(Conditional, ZeroPotentialsReturnReferenceWeights) {
    const Graph g = build_graph(testing::path_edges(3));
    const FiniteSpinModel m(g, {"x", "y", "z"}, {0.2, 0.3, 0.5}, {});
    const auto pi = conditional(m, g, 1, {{0, 2}, {2, 1}});
    EXPECT_NEAR(pi[0], 0.2, 1e-15);
    EXPECT_NEAR(pi[1], 0.3, 1e-15);
    EXPECT_NEAR(pi[2], 0.5, 1e-15);
}

TEST(Conditional, MissingNeighborIsAnError) {
    const Graph g = build_graph(testing::path_edges(3));
    EXPECT_THROW(conditional(ising(g, 0.1), g, 1, {{0, 1}}), ModelError);
    EXPECT_THROW(conditional(ising(g, 0.1), g, 1, {{0, 1}, {2, 5}}), ModelError);
}

TEST(Conditional, PotentialOrientation) {
    const Graph g = p2();
    FiniteSpinModel m(g, {"x", "y"}, {}, {});
    m.set_potential(1, 0, {0.0, 1.0, 2.0, 3.0});  // row = symbol at b
    EXPECT_DOUBLE_EQ(m.potential(1, 0, 0, 1), 1.0);
    EXPECT_DOUBLE_EQ(m.potential(0, 1, 1, 0), 1.0);
    EXPECT_DOUBLE_EQ(m.potential(0, 1, 0, 1), 2.0);
    EXPECT_THROW(m.set_potential(0, 1, {1.0}), ModelError);
}

TEST(Model, ValidatesInputs) {
    const Graph g = p2();
    EXPECT_THROW(FiniteSpinModel(g, {}, {}, {}), ModelError);
    EXPECT_THROW(FiniteSpinModel(g, {"a", "a"}, {}, {}), ModelError);
    EXPECT_THROW(FiniteSpinModel(g, {"a", "b"}, {0.5, 0.6}, {}), ModelError);
    EXPECT_THROW(FiniteSpinModel(g, {"a", "b"}, {1.0, 0.0}, {}), ModelError);
    EXPECT_THROW(FiniteSpinModel(g, {"a", "b"}, {0.5}, {}), ModelError);
    EXPECT_THROW(FiniteSpinModel(g, {"a", "b"}, {}, {1.0, -1.0}), ModelError);
    EXPECT_THROW(FiniteSpinModel(g, {"a", "b"}, {}, {1.0}), ModelError);
    EXPECT_THROW(make_product_coupling_model(g, {"up", "down"}, 0.1, {}, {}), ModelError);
}

TEST(TvDistance, Examples) {
    const LocalDistribution p{{0.5, 0.5}}, q{{1.0, 0.0}}, r{{0.0, 1.0}};
    EXPECT_EQ(tv_distance(p, p), 0.0);
    EXPECT_NEAR(tv_distance(p, q), testing::half_l1(p.p, q.p), 1e-15);
    EXPECT_NEAR(tv_distance(p, q), 0.5, 1e-15);
    EXPECT_NEAR(tv_distance(q, r), 1.0, 1e-15);
    EXPECT_THROW(tv_distance(p, LocalDistribution{{1.0, 0.0, 0.0}}), ModelError);
}

TEST(TvDistance, MetricOnRandomTriples) {
    testing::Rng rng(11);
    for (int t = 0; t < 2000; ++t) {
        const std::size_t q = 2 + t % 5;
        const auto a = testing::random_distribution(rng, q, 0.2);
        const auto b = testing::random_distribution(rng, q, 0.2);
        const auto c = testing::random_distribution(rng, q, 0.2);
        EXPECT_NEAR(tv_distance(a, b), tv_distance(b, a), 1e-15);
        EXPECT_LE(tv_distance(a, c), tv_distance(a, b) + tv_distance(b, c) + 1e-15);
        EXPECT_EQ(tv_distance(a, a), 0.0);
        EXPECT_GE(tv_distance(a, b), 0.0);
        EXPECT_LE(tv_distance(a, b), 1.0 + 1e-15);
        if (a.p != b.p) EXPECT_GT(tv_distance(a, b), 0.0);
    }
}

TEST(KappaEntry, SingleNeighborIsTanh) {
    const Graph g = p2();
    const auto k = estimate_kappa_entry(ising(g, 0.5, {0.0, 0.0}), g, 0, 1, 1.0);
    EXPECT_NEAR(k.value, std::tanh(0.5), 1e-15);
    EXPECT_FALSE(k.vacuous);
}

TEST(KappaEntry, ZeroCouplingIsZero) {
    const Graph g = build_graph(testing::path_edges(4));
    EXPECT_EQ(estimate_kappa_entry(ising(g, 0.0), g, 1, 2, 10.0).value, 0.0);
}

TEST(KappaEntry, EmptyAdmissibleSetIsVacuous) {
    const Graph g = p2();
    const auto k = estimate_kappa_entry(ising(g, 0.5, {2.0, 3.0}), g, 0, 1, 1.0);
    EXPECT_EQ(k.value, 0.0);
    EXPECT_TRUE(k.vacuous);
}

TEST(KappaEntry, ChainInteriorAndEndpoints) {
    // local field beta * (sum of neighbor spins); one flip moves it by 2 beta
    const double beta = 0.1;
    const Graph g = build_graph(testing::path_edges(6));
    const auto w = estimate_kappa(ising(g, beta, {1.0, 1.0}), g, 600.0);
    EXPECT_NEAR(w[0][0], std::tanh(beta), 1e-15);
    for (Vertex v = 1; v < 5; ++v) {
        for (double x : w[v]) EXPECT_NEAR(x, std::tanh(2.0 * beta) / 2.0, 1e-15);
    }
}

// Classical single-flip estimator, written independently of the library.
double classical_estimate(const FiniteSpinModel& m, const Graph& g, Vertex l, Vertex lp) {
    const std::size_t deg = g.degree(l);
    const int q = static_cast<int>(m.alphabet_size());
    const std::size_t slot = g.neighbor_slot(l, lp);
    double best = 0.0;
    std::size_t total = 1;
    for (std::size_t k = 0; k < deg; ++k) total *= static_cast<std::size_t>(q);
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<int> x(deg);
        std::size_t c = code;
        for (auto& s : x) {
            s = static_cast<int>(c % static_cast<std::size_t>(q));
            c /= static_cast<std::size_t>(q);
        }
        for (int b = 0; b < q; ++b) {
            auto y = x;
            y[slot] = b;
            const auto px = m.conditional_from_neighbors(l, x).p;
            const auto py = m.conditional_from_neighbors(l, y).p;
            best = std::max(best, testing::half_l1(px, py));
        }
    }
    return best;
}

TEST(KappaEntry, InfiniteKIsClassicalAndMonotoneInK) {
    testing::Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        const Graph g = build_graph(testing::random_connected_edges(rng, 3 + t % 3, 0.4));
        const auto m = testing::random_model(rng, g, 2 + t % 2, 0.8);
        for (Vertex l = 0; l < g.vertex_count(); ++l) {
            for (Vertex lp : g.neighbors(l)) {
                const double inf = std::numeric_limits<double>::infinity();
                EXPECT_NEAR(estimate_kappa_entry(m, g, l, lp, inf).value, classical_estimate(m, g, l, lp), 1e-15);
                double prev = 0.0;
                for (double K : {0.1, 0.3, 0.6, 0.9, 2.0}) {
                    const double v = estimate_kappa_entry(m, g, l, lp, K).value;
                    EXPECT_GE(v, prev);
                    prev = v;
                }
            }
        }
    }
}

TEST(Membership, ZeroWeightWithExactKappaPasses) {
    const Graph g = build_graph(testing::path_edges(4));
    const auto m = ising(g, 0.3, {0.0, 0.0});
    ContractionParams p{estimate_kappa(m, g, 1.0), uniform_edge_weights(g, 0.0), 2, 2};
    const auto r = verify_membership(m, g, 1.0, p);
    EXPECT_TRUE(r.pass);
    for (const auto& s : r.sites) EXPECT_TRUE(s.kappa_multi_site);
}

TEST(Membership, UnitWeightPassesWithSmallC) {
    const Graph g = build_graph(testing::path_edges(4));
    const auto m = ising(g, 0.3, {1.0, 1.0});
    ContractionParams p{estimate_kappa(m, g, 1.0), uniform_edge_weights(g, 0.01), 2, 2};
    const auto r = verify_membership(m, g, 1.0, p);
    EXPECT_TRUE(r.pass);
    for (const auto& s : r.sites) EXPECT_NEAR(s.max_pi_h, 1.0, 1e-15);
}

TEST(Membership, HeavyConstantWeightFails) {
    const Graph g = build_graph(testing::path_edges(3));
    const auto m = ising(g, 0.2, {3.0, 3.0});
    ContractionParams p{estimate_kappa(m, g, 10.0), uniform_edge_weights(g, 0.0), 2, 2};
    const auto r = verify_membership(m, g, 10.0, p);
    EXPECT_FALSE(r.pass);
    for (const auto& s : r.sites) {
        EXPECT_FALSE(s.pass);
        EXPECT_NEAR(s.h_slack, -2.0, 1e-12);
        EXPECT_EQ(s.h_worst_x.size(), g.degree(s.site));
    }
}

TEST(Membership, UnderstatedKappaReportsWorstPair) {
    const Graph g = build_graph(testing::path_edges(3));
    const auto m = ising(g, 0.4, {0.0, 0.0});
    ContractionParams p{uniform_edge_weights(g, 0.05), uniform_edge_weights(g, 0.0), 2, 2};
    const auto r = verify_membership(m, g, 1.0, p);
    EXPECT_FALSE(r.pass);
    const auto& mid = r.sites[1];
    EXPECT_LT(mid.kappa_slack, 0.0);
    EXPECT_NE(mid.kappa_worst_x, mid.kappa_worst_y);
}

TEST(Membership, MultiSiteEnumerationCappedAtDegreeThree) {
    const Graph g = build_graph({{"o", "a"}, {"o", "b"}, {"o", "c"}, {"o", "d"}});
    const auto m = ising(g, 0.05, {0.0, 0.0});
    ContractionParams p{estimate_kappa(m, g, 1.0), uniform_edge_weights(g, 0.0), 4, 2};
    const auto r = verify_membership(m, g, 1.0, p);
    EXPECT_TRUE(r.pass);
    EXPECT_FALSE(r.sites[g.index_of("o")].kappa_multi_site);
    EXPECT_TRUE(r.sites[g.index_of("a")].kappa_multi_site);
}

TEST(Membership, ExactSingleFlipEstimatesPassOnRandomModels) {
    testing::Rng rng(99);
    for (int t = 0; t < 60; ++t) {
        const Graph g = build_graph(testing::random_connected_edges(rng, 3 + t % 4, 0.3));
        const auto m = testing::random_model(rng, g, 2 + t % 3, 0.7);
        const double K = 0.5 + 0.1 * (t % 5);
        ContractionParams p{estimate_kappa(m, g, K), uniform_edge_weights(g, 0.0), 2, 2};
        const auto r = verify_membership(m, g, K, p);
        for (const auto& s : r.sites) EXPECT_GE(s.kappa_slack, -1e-12);
    }
}

TEST(Properties, ConditionalIsNormalizedForEveryBoundary) {
    testing::Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        const Graph g = build_graph(testing::random_connected_edges(rng, 4, 0.5));
        const auto m = testing::random_model(rng, g, 3, 2.0);
        const ConfigSpace space(g.vertex_count(), 3);
        for (std::size_t idx = 0; idx < space.size(); ++idx) {
            const auto x = space.decode(idx);
            for (Vertex l = 0; l < g.vertex_count(); ++l) {
                const auto pi = m.conditional(l, x);
                double s = 0.0;
                for (double v : pi.p) {
                    EXPECT_GE(v, 0.0);
                    s += v;
                }
                EXPECT_NEAR(s, 1.0, 1e-12);
            }
        }
    }
}

TEST(Properties, PotentialIsSymmetricUnderTransposition) {
    testing::Rng rng(4);
    const Graph g = build_graph(testing::random_connected_edges(rng, 5, 0.5));
    const auto m = testing::random_model(rng, g, 3, 1.0);
    for (const auto& [a, b] : g.edges()) {
        for (int x = 0; x < 3; ++x) {
            for (int y = 0; y < 3; ++y) EXPECT_EQ(m.potential(a, b, x, y), m.potential(b, a, y, x));
        }
    }
}

}  // namespace
}  // namespace gibbscert
