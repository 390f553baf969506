#pragma once

#include <vector>

#include "gibbscert/spin_model.hpp"

namespace gibbscert {

/// Dense probability vector over Xi^L, indexed by ConfigSpace.
struct ExactMeasure {
    ConfigSpace space;
    std::vector<double> weights;

    [[nodiscard]] double total() const { return compensated_total(weights); }
};

/// Real function of a single coordinate.
struct Observable {
    Vertex site = 0;
    std::vector<double> values;  // one per symbol

    [[nodiscard]] double sup_norm() const;
    [[nodiscard]] double operator()(const ConfigSpace& space, std::size_t index) const {
        return values[static_cast<std::size_t>(space.digit(index, site))];
    }
};

/// Free-boundary Boltzmann distribution: prod sigma(x_l) * exp(sum over edges W), normalized.
ExactMeasure exact_gibbs(const FiniteSpinModel& model, const Graph& g, std::size_t cap = kDefaultCap);

/// Product of the reference weights (the all-zero-potential measure).
ExactMeasure product_measure(const FiniteSpinModel& model, const Graph& g, std::size_t cap = kDefaultCap);

/// max over sites l and configurations z of |mu(z) - sum_a mu(z with a at l) pi_l^z(z_l)|.
double check_consistency(const ExactMeasure& mu, const FiniteSpinModel& model);

/// sup_l E_mu[h(x_l)].
double h_moment(const ExactMeasure& mu, const FiniteSpinModel& model);

double expectation(const ExactMeasure& mu, const Observable& f);
double covariance(const ExactMeasure& mu, const Observable& f, const Observable& g);

/// mu conditioned on the coordinates outside `region` being equal to those of x.
ExactMeasure conditional_measure(const ExactMeasure& mu, const VertexSet& region, const Configuration& x);

/// Distribution of a single coordinate.
LocalDistribution site_marginal(const ExactMeasure& mu, Vertex site);

}  // namespace gibbscert
