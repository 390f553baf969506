#pragma once

#include "gibbscert/coupling.hpp"

namespace gibbscert {

struct DecayReport {
    Vertex l1 = 0;
    Vertex l2 = 0;
    std::size_t distance = 0;
    double covariance = 0.0;
    double bound = 0.0;  // C_K |f| |g| exp(-alpha_K distance)
    double alpha_K = 0.0;
    double C_K = 0.0;
    double r_K = 0.0;
    double xi = 0.0;
    std::size_t conditionings = 0;
    double reconstruction_residual = 0.0;  // |Cov - sum_x mu(x) g(x) Phi(x)|
    double phi_drift = 0.0;                // max_s |Phi_s(x) - Phi(x)|
    double phi_slack = 0.0;                // min_x 2|f| gamma_{D_0}(nu_{N-1}) - |Phi(x)|
    double localized_slack = 0.0;          // min_x r^{N-1} max{gamma_0, lambda_0 / xi} - gamma_{D_0}(nu_{N-1})
    double shell_slack = 0.0;              // worst componentwise M(K) step slack over all x and s
    bool identities_hold = false;
    bool inequalities_hold = false;
    bool bound_holds = false;

    [[nodiscard]] bool pass() const noexcept { return identities_hold && inequalities_hold && bound_holds; }
};

/// Exact covariance of two single-site observables against the decay bound,
/// with the conditioning decomposition checked on every x outside D_{N-1}.
/// Requires a Unique certificate and f, g at distinct sites.
DecayReport decay_experiment(const FiniteSpinModel& model, const ColorPartition& partition,
                             const UniquenessCertificate& cert, const Observable& f, const Observable& g,
                             const Tolerances& tol = {}, std::size_t cap = kDefaultCap);

}  // namespace gibbscert
