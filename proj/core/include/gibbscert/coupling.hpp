#pragma once

#include <array>
#include <string>
#include <vector>

#include "gibbscert/criterion.hpp"
#include "gibbscert/gibbs.hpp"

namespace gibbscert {

/// Joint law on Xi x Xi, row index = first coordinate.
struct PairDistribution {
    std::size_t q = 0;
    std::vector<double> w;

    double operator()(std::size_t a, std::size_t b) const { return w[a * q + b]; }
    [[nodiscard]] double off_diagonal_mass() const;
    [[nodiscard]] LocalDistribution first_marginal() const;
    [[nodiscard]] LocalDistribution second_marginal() const;
};

/// Maximal coupling: diagonal p^q plus (p - p^q) x (q - p^q) / d(p, q).
/// When d(p, q) = 0 the coupling is the pure diagonal.
PairDistribution optimal_coupling(const LocalDistribution& p, const LocalDistribution& q);

/// Dense probability vector over pairs (x, y) of configurations,
/// pair index x * |X| + y.
class CouplingTable {
public:
    CouplingTable(ConfigSpace space, std::vector<double> weights, std::size_t cap = kDefaultCap);

    static CouplingTable product(const ExactMeasure& first, const ExactMeasure& second, std::size_t cap = kDefaultCap);
    /// y = x almost surely.
    static CouplingTable diagonal(const ExactMeasure& mu, std::size_t cap = kDefaultCap);

    [[nodiscard]] const ConfigSpace& space() const noexcept { return space_; }
    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }
    [[nodiscard]] std::size_t states() const noexcept { return space_.size(); }
    [[nodiscard]] double operator()(std::size_t x, std::size_t y) const { return weights_[x * space_.size() + y]; }
    [[nodiscard]] double total() const { return compensated_total(weights_); }
    [[nodiscard]] std::vector<double> first_marginal() const;
    [[nodiscard]] std::vector<double> second_marginal() const;

private:
    ConfigSpace space_;
    std::vector<double> weights_;
};

/// Resamples the pair at `site` from the optimal coupling of the two
/// conditional laws, freezing every other coordinate.
CouplingTable apply_R(const CouplingTable& nu, Vertex site, const FiniteSpinModel& model);

/// Mass of pairs that disagree at `site` while agreeing on all its neighbors.
double y_complement_mass(const CouplingTable& nu, Vertex site, const Graph& g);

/// nu(I_l) and nu(I_l H^i_l') for every l, l' and i in {0, 1}.
struct CouplingStats {
    std::size_t n = 0;
    std::vector<double> disagreement;                // nu(I_l)
    std::array<std::vector<double>, 2> cross;        // cross[i][l * n + l'] = nu(I_l H^i_l')

    [[nodiscard]] double I(Vertex l) const { return disagreement[l]; }
    [[nodiscard]] double IH(int i, Vertex l, Vertex lp) const { return cross[static_cast<std::size_t>(i)][l * n + lp]; }
    [[nodiscard]] double gamma(const VertexSet& region) const;
    [[nodiscard]] double lambda(const VertexSet& region) const;
};

CouplingStats coupling_stats(const CouplingTable& nu, const FiniteSpinModel& model);

struct Functionals {
    double gamma = 0.0;
    double lambda = 0.0;
};

/// gamma_D = max_{l in D} nu(I_l); lambda_D = max over i and l1, l2 in D of nu(I_l1 H^i_l2).
Functionals functionals(const CouplingTable& nu, const VertexSet& region, const FiniteSpinModel& model);

/// Data the inequality checks are measured against.
struct CheckContext {
    EdgeWeights kappa;
    EdgeWeights c;
    double K = 1.0;
    Matrix2 M;
    Tolerances tol;
};

/// Worst slack (rhs - lhs) of the four one-step reconstruction inequalities.
struct StepSlacks {
    double transfer = 0.0;        // disagreement at the updated site
    double moment_other = 0.0;    // nu(I_l1 H_l), l1 != l
    double moment_spread = 0.0;   // nu(I_l H_l1), l1 != l
    double moment_self = 0.0;     // nu(I_l H_l)

    [[nodiscard]] double min() const;
};

StepSlacks step_slacks(const CouplingStats& before, const CouplingStats& after, Vertex site, const Graph& g,
                       const CheckContext& ctx);

struct ApplicationRecord {
    Vertex site = 0;
    double gamma_before = 0.0;
    double gamma_after = 0.0;
    double lambda_before = 0.0;
    double lambda_after = 0.0;
    StepSlacks slacks;
    double y_complement = 0.0;
};

struct SweepDiagnostics {
    std::vector<ApplicationRecord> applications;
    Functionals start;
    Functionals end;
    std::array<double, 2> bound{};  // M (gamma_0, lambda_0)
    double contraction_slack = 0.0;  // min of bound - (gamma, lambda)

    [[nodiscard]] double worst_step_slack() const;
    [[nodiscard]] double worst_slack() const;
    [[nodiscard]] double max_y_complement() const;
};

struct SweepResult {
    CouplingTable table;
    SweepDiagnostics diagnostics;
};

/// R at every vertex, class V_0 first, ascending handle inside a class.
SweepResult sweep(const CouplingTable& nu, const ColorPartition& partition, const FiniteSpinModel& model,
                  const CheckContext& ctx);

struct TrajectoryRow {
    std::size_t sweep = 0;
    double gamma = 0.0;
    double lambda = 0.0;
    double transformed_norm = 0.0;  // max(xi * gamma, lambda)
    double min_slack = 0.0;         // worst inequality slack observed in this sweep
};

struct Trajectory {
    std::vector<TrajectoryRow> rows;
    std::vector<std::string> falsifications;
    double xi = 0.0;
    double r_K = 0.0;
    double worst_slack = 0.0;
    double max_y_complement = 0.0;
};

/// xi = M10 / (r - M11) for the exact eigenvalue r of M; NaN when undefined.
double similarity_weight(const Matrix2& M);

/// Repeated sweeps until gamma < stop_tol or max_sweeps. Every inequality slack
/// below -tol.slack and every sweep whose transformed norm grows by more
/// than r_K + 1e-9 is recorded as a falsification.
Trajectory iterate(const CouplingTable& nu0, const ColorPartition& partition, const FiniteSpinModel& model,
                   const CheckContext& ctx, double stop_tol, std::size_t max_sweeps);

inline constexpr double kContractionFactorSlack = 1e-9;

struct ShellStep {
    std::size_t s = 0;
    double gamma = 0.0;   // gamma over D_{N-s-1}
    double lambda = 0.0;  // lambda over D_{N-s-1}
    double bound_gamma = 0.0;
    double bound_lambda = 0.0;
    double slack = 0.0;  // +inf for s = 0
    double phi = 0.0;    // sum nu_s(y, z) (f(y) - f(z)), when an observable is supplied
};

struct ShellRun {
    Configuration x;       // conditioning values; only coordinates outside D_{N-1} are meaningful
    double weight = 0.0;   // mu of the conditioning cylinder
    double phi = 0.0;      // mu^x(f) - mu(f)
    std::vector<ShellStep> steps;
};

struct ShellTrajectory {
    std::size_t N = 0;
    std::vector<VertexSet> shells;
    VertexSet outside;
    std::vector<ShellRun> runs;
    double worst_slack = 0.0;
};

/// For every conditioning x outside D_{N-1}: nu_0 = mu^x (x) mu, then
/// nu_s is nu_{s-1} swept over D_{N-s-1}; each step is compared with
/// M (gamma, lambda) of the previous step on the larger shell.
ShellTrajectory localized_sweep(const ExactMeasure& mu, const FiniteSpinModel& model, const ColorPartition& partition,
                                Vertex center, std::size_t N, const CheckContext& ctx, const Observable* f = nullptr,
                                std::size_t cap = kDefaultCap);

}  // namespace gibbscert
