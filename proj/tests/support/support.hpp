#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gibbscert/coupling.hpp"

namespace gibbscert::testing {

using Rng = std::mt19937_64;
using EdgeList = std::vector<std::pair<std::string, std::string>>;

inline std::string vid(std::size_t i) { return "v" + std::to_string(i); }

inline EdgeList path_edges(std::size_t n) {
    EdgeList e;
    for (std::size_t i = 1; i < n; ++i) e.emplace_back(vid(i), vid(i + 1));
    return e;
}

inline EdgeList cycle_edges(std::size_t n) {
    EdgeList e = path_edges(n);
    e.emplace_back(vid(n), vid(1));
    return e;
}

/// Random spanning tree plus extra edges with probability p.
inline EdgeList random_connected_edges(Rng& rng, std::size_t n, double p) {
    EdgeList e;
    std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t j = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
        e.emplace_back(vid(j), vid(i));
        has[i][j] = has[j][i] = true;
    }
    std::bernoulli_distribution extra(p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!has[i][j] && extra(rng)) e.emplace_back(vid(i), vid(j));
        }
    }
    return e;
}

inline LocalDistribution random_distribution(Rng& rng, std::size_t q, double zero_prob = 0.0) {
    std::exponential_distribution<double> ex(1.0);
    std::bernoulli_distribution zero(zero_prob);
    LocalDistribution d;
    double total = 0.0;
    for (std::size_t a = 0; a < q; ++a) {
        const double v = zero(rng) ? 0.0 : ex(rng) + 1e-3;
        d.p.push_back(v);
        total += v;
    }
    if (total == 0.0) {
        d.p[0] = 1.0;
        total = 1.0;
    }
    for (auto& v : d.p) v /= total;
    return d;
}

inline std::vector<std::string> symbols(std::size_t q) {
    std::vector<std::string> s;
    for (std::size_t a = 0; a < q; ++a) s.push_back("s" + std::to_string(a));
    return s;
}

/// Random ref weights, h in [0, 1] and potentials with entries in [-scale, scale].
inline FiniteSpinModel random_model(Rng& rng, const Graph& g, std::size_t q, double scale) {
    const auto sigma = random_distribution(rng, q).p;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> h(q);
    for (auto& v : h) v = unit(rng);
    FiniteSpinModel m(g, symbols(q), sigma, h);
    std::uniform_real_distribution<double> pot(-scale, scale);
    for (const auto& [a, b] : g.edges()) {
        std::vector<double> t(q * q);
        for (auto& v : t) v = pot(rng);
        m.set_potential(a, b, t);
    }
    return m;
}

inline std::vector<double> random_probability_vector(Rng& rng, std::size_t n, double zero_prob = 0.0) {
    std::exponential_distribution<double> ex(1.0);
    std::bernoulli_distribution zero(zero_prob);
    std::vector<double> w(n);
    for (auto& v : w) v = zero(rng) ? 0.0 : ex(rng);
    if (std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; })) w[0] = 1.0;
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& v : w) v /= total;
    return w;
}

inline CouplingTable random_coupling_table(Rng& rng, const ConfigSpace& space, double zero_prob = 0.0) {
    return CouplingTable(space, random_probability_vector(rng, space.size() * space.size(), zero_prob));
}

/// Sinkhorn scaling of a random positive kernel onto marginals (a, b).
inline CouplingTable sinkhorn_coupling(Rng& rng, const ExactMeasure& a, const ExactMeasure& b, int rounds = 400) {
    const std::size_t S = a.space.size();
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> w(S * S);
    for (auto& v : w) v = std::pow(u(rng), 4.0);
    std::vector<double> col(S);
    for (int r = 0; r < rounds; ++r) {
        for (std::size_t x = 0; x < S; ++x) {
            double s = 0.0;
            for (std::size_t y = 0; y < S; ++y) s += w[x * S + y];
            for (std::size_t y = 0; y < S; ++y) w[x * S + y] *= a.weights[x] / s;
        }
        std::fill(col.begin(), col.end(), 0.0);
        for (std::size_t x = 0; x < S; ++x) {
            for (std::size_t y = 0; y < S; ++y) col[y] += w[x * S + y];
        }
        for (std::size_t x = 0; x < S; ++x) {
            for (std::size_t y = 0; y < S; ++y) w[x * S + y] *= b.weights[y] / col[y];
        }
    }
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& v : w) v /= total;
    return CouplingTable(a.space, std::move(w));
}

inline std::vector<double> mix(const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - t) * a[i] + t * b[i];
    return out;
}

// ---- independent oracles ----

inline double half_l1(const std::vector<double>& p, const std::vector<double>& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
    return 0.5 * s;
}

/// Smallest k admitting a proper k-coloring, by exhaustive search.
inline std::size_t brute_chromatic_number(const Graph& g) {
    const std::size_t n = g.vertex_count();
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::size_t> color(n, 0);
        while (true) {
            bool ok = true;
            for (const auto& [a, b] : g.edges()) ok = ok && color[a] != color[b];
            if (ok) return k;
            std::size_t i = 0;
            while (i < n && ++color[i] == k) color[i++] = 0;
            if (i == n) break;
        }
    }
    return n;
}

inline std::vector<std::vector<std::size_t>> floyd_warshall(const Graph& g) {
    const std::size_t n = g.vertex_count();
    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max() / 4;
    std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (const auto& [a, b] : g.edges()) d[a][b] = d[b][a] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
        }
    }
    return d;
}

/// Largest eigenvalue of a nonnegative 2x2 matrix with positive off-diagonals, by power iteration.
inline double perron_root(const Matrix2& M) {
    double x = 1.0, y = 1.0, lambda = 0.0;
    for (int it = 0; it < 20000; ++it) {
        const double nx = M(0, 0) * x + M(0, 1) * y;
        const double ny = M(1, 0) * x + M(1, 1) * y;
        lambda = std::max(nx, ny) / std::max(x, y);
        const double s = std::max(nx, ny);
        x = nx / s;
        y = ny / s;
    }
    return lambda;
}

/// <s_i s_j> - <s_i><s_j> for a zero-field +-1 chain of n sites with coupling beta,
/// free boundary, by 2x2 transfer matrices (sites 0-based).
inline double ising_chain_covariance(double beta, std::size_t n, std::size_t i, std::size_t j) {
    using M2 = std::array<std::array<double, 2>, 2>;
    const std::array<double, 2> spin{-1.0, 1.0};
    auto mul = [](const M2& a, const M2& b) {
        M2 c{};
        for (int r = 0; r < 2; ++r)
            for (int s = 0; s < 2; ++s) c[r][s] = a[r][0] * b[0][s] + a[r][1] * b[1][s];
        return c;
    };
    M2 T{}, S{}, I{};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) T[a][b] = std::exp(beta * spin[a] * spin[b]);
        S[a][a] = spin[a];
        I[a][a] = 1.0;
    }
    auto chain = [&](std::vector<M2> at_site) {
        M2 acc = I;
        for (std::size_t k = 0; k < n; ++k) {
            acc = mul(acc, at_site[k]);
            if (k + 1 < n) acc = mul(acc, T);
        }
        return acc[0][0] + acc[0][1] + acc[1][0] + acc[1][1];
    };
    std::vector<M2> plain(n, I);
    const double Z = chain(plain);
    auto with = [&](std::vector<std::size_t> sites) {
        auto v = plain;
        for (auto s : sites) v[s] = mul(v[s], S);
        return chain(v) / Z;
    };
    return with({i, j}) - with({i}) * with({j});
}

}  // namespace gibbscert::testing
