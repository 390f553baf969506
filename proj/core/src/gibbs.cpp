#include "gibbscert/gibbs.hpp"

#include <algorithm>
#include <cmath>

namespace gibbscert {

double Observable::sup_norm() const {
    double s = 0.0;
    for (double v : values) s = std::max(s, std::fabs(v));
    return s;
}

namespace {

void normalize(std::vector<double>& w) {
    const double z = compensated_total(w);
    for (auto& v : w) v /= z;
}

}  // namespace

ExactMeasure exact_gibbs(const FiniteSpinModel& model, const Graph& g, std::size_t cap) {
    const std::size_t n = g.vertex_count();
    const std::size_t q = model.alphabet_size();
    checked_power(q, n, cap, "exact Gibbs measure");
    ExactMeasure mu{ConfigSpace(n, q), {}};
    const auto edges = g.edges();
    std::vector<double> logw(mu.space.size());
    for (std::size_t idx = 0; idx < logw.size(); ++idx) {
        const Configuration x = mu.space.decode(idx);
        double e = 0.0;
        for (Vertex v = 0; v < n; ++v) e += std::log(model.ref_weights()[static_cast<std::size_t>(x[v])]);
        for (const auto& [a, b] : edges) e += model.potential(a, b, x[a], x[b]);
        logw[idx] = e;
    }
    const double top = *std::max_element(logw.begin(), logw.end());
    mu.weights.resize(logw.size());
    for (std::size_t idx = 0; idx < logw.size(); ++idx) mu.weights[idx] = std::exp(logw[idx] - top);
    normalize(mu.weights);
    return mu;
}

ExactMeasure product_measure(const FiniteSpinModel& model, const Graph& g, std::size_t cap) {
    const std::size_t n = g.vertex_count();
    const std::size_t q = model.alphabet_size();
    checked_power(q, n, cap, "product measure");
    ExactMeasure mu{ConfigSpace(n, q), {}};
    mu.weights.resize(mu.space.size());
    for (std::size_t idx = 0; idx < mu.weights.size(); ++idx) {
        double w = 1.0;
        for (Vertex v = 0; v < n; ++v) w *= model.ref_weights()[static_cast<std::size_t>(mu.space.digit(idx, v))];
        mu.weights[idx] = w;
    }
    return mu;
}

double check_consistency(const ExactMeasure& mu, const FiniteSpinModel& model) {
    const auto& space = mu.space;
    const int q = static_cast<int>(space.alphabet_size());
    double worst = 0.0;
    for (Vertex l = 0; l < space.vertex_count(); ++l) {
        for (std::size_t idx = 0; idx < space.size(); ++idx) {
            const Configuration z = space.decode(idx);
            const LocalDistribution pi = model.conditional(l, z);
            CompensatedSum resampled;
            for (int a = 0; a < q; ++a) resampled += mu.weights[space.with_digit(idx, l, a)];
            const double rhs = resampled.value() * pi[static_cast<std::size_t>(z[l])];
            worst = std::max(worst, std::fabs(mu.weights[idx] - rhs));
        }
    }
    return worst;
}

double h_moment(const ExactMeasure& mu, const FiniteSpinModel& model) {
    double sup = 0.0;
    for (Vertex l = 0; l < mu.space.vertex_count(); ++l) {
        CompensatedSum e;
        for (std::size_t idx = 0; idx < mu.weights.size(); ++idx) e += mu.weights[idx] * model.h(mu.space.digit(idx, l));
        sup = std::max(sup, e.value());
    }
    return sup;
}

double expectation(const ExactMeasure& mu, const Observable& f) {
    CompensatedSum e;
    for (std::size_t idx = 0; idx < mu.weights.size(); ++idx) e += mu.weights[idx] * f(mu.space, idx);
    return e.value();
}

double covariance(const ExactMeasure& mu, const Observable& f, const Observable& g) {
    CompensatedSum fg;
    for (std::size_t idx = 0; idx < mu.weights.size(); ++idx) fg += mu.weights[idx] * f(mu.space, idx) * g(mu.space, idx);
    return fg.value() - expectation(mu, f) * expectation(mu, g);
}

ExactMeasure conditional_measure(const ExactMeasure& mu, const VertexSet& region, const Configuration& x) {
    const auto& space = mu.space;
    if (x.size() != space.vertex_count()) throw ModelError("conditioning configuration has wrong length");
    std::vector<Vertex> frozen;
    for (Vertex v = 0; v < space.vertex_count(); ++v) {
        if (!set_contains(region, v)) frozen.push_back(v);
    }
    ExactMeasure out{space, std::vector<double>(space.size(), 0.0)};
    for (std::size_t idx = 0; idx < space.size(); ++idx) {
        const bool match = std::all_of(frozen.begin(), frozen.end(), [&](Vertex v) { return space.digit(idx, v) == x[v]; });
        if (match) out.weights[idx] = mu.weights[idx];
    }
    const double z = compensated_total(out.weights);
    if (!(z > 0.0)) throw ModelError("conditioning event has zero probability");
    for (auto& w : out.weights) w /= z;
    return out;
}

LocalDistribution site_marginal(const ExactMeasure& mu, Vertex site) {
    std::vector<CompensatedSum> acc(mu.space.alphabet_size());
    for (std::size_t idx = 0; idx < mu.weights.size(); ++idx) {
        acc[static_cast<std::size_t>(mu.space.digit(idx, site))] += mu.weights[idx];
    }
    LocalDistribution out;
    for (const auto& a : acc) out.p.push_back(a.value());
    return out;
}

}  // namespace gibbscert
