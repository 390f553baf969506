#pragma once

#include <array>
#include <string>
#include <vector>

#include "gibbscert/graph.hpp"

namespace gibbscert {

/// Per-directed-edge values: weights[l][k] belongs to the edge (l, g.neighbors(l)[k]).
using EdgeWeights = std::vector<std::vector<double>>;

EdgeWeights uniform_edge_weights(const Graph& g, double value);

struct ContractionParams {
    EdgeWeights kappa;
    EdgeWeights c;
    int delta = 0;
    int chi = 0;
};

struct Norms {
    double kappa_bar = 0.0;
    double c_bar = 0.0;
    bool kappa_admissible = false;  // kappa_bar < 1
    bool c_admissible = false;      // 0 < c_bar < delta^-chi
    std::string reason;             // empty when both are admissible

    [[nodiscard]] bool admissible() const noexcept { return kappa_admissible && c_admissible; }
};

/// 2x2 row-major matrix.
struct Matrix2 {
    std::array<std::array<double, 2>, 2> m{};

    double& operator()(int r, int c) { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    double operator()(int r, int c) const { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    [[nodiscard]] std::array<double, 2> apply(const std::array<double, 2>& v) const;
};

/// Closed-form criterion inputs, after the row-sum norms are taken.
struct CriterionData {
    double kappa_bar = 0.0;
    double c_bar = 0.0;
    int delta = 0;
    int chi = 0;
};

struct DecayConstants {
    double xi = 0.0;
    double alpha = 0.0;
    double prefactor = 0.0;  // C_K
};

enum class Verdict { Unique, Indeterminate, Inadmissible };
const char* to_string(Verdict v) noexcept;

struct UniquenessCertificate {
    double K = 0.0;
    double K_star = 0.0;
    double A = 0.0;
    Matrix2 M;
    double r_K = 0.0;
    double r_K_literal = 0.0;  // closed form printed with 8*delta^chi under the radical; diagnostic only
    double xi = 0.0;
    double alpha_K = 0.0;
    double C_K = 0.0;
    double mu_h = 0.0;
    Norms norms;
    CriterionData data;
    Verdict verdict = Verdict::Inadmissible;
    std::string reason;
};

/// Row-sum suprema of kappa and c plus the admissibility flags for the
/// given (delta, chi).
Norms norms(const ContractionParams& params, const Graph& g);

/// A = 2 delta^(chi+1) / (1 - kappa_bar).
double a_constant(double kappa_bar, int delta, int chi);

/// Threshold K*; throws CriterionError when c_bar == 0, kappa_bar >= 1 or delta < 2.
double k_star(double kappa_bar, double c_bar, int delta, int chi);

/// M(K) = [[kappa_bar + A/K, 2A/K], [delta^(chi-1), c_bar delta^chi]].
Matrix2 contraction_matrix(const CriterionData& d, double A, double K);

/// Largest eigenvalue of a nonnegative 2x2 matrix.
double spectral_radius(const Matrix2& M);

/// The closed form with 8 delta^chi A/K under the radical. Kept as a
/// reported upper value; it does not coincide with the eigenvalue of M(K).
double literal_radius(const CriterionData& d, double A, double K);

/// xi, alpha_K = -log r_K and C_K = 2/r_K max{1, mu_h/xi}.
DecayConstants decay_constants(double r_K, const CriterionData& d, double A, double K, double mu_h);

/// Full certificate for a given K.
UniquenessCertificate certify(const ContractionParams& params, const Graph& g, double K, double mu_h);

/// Same, from already-reduced norms.
UniquenessCertificate certify(const CriterionData& d, double K, double mu_h);

double int_power(double base, int exponent);

}  // namespace gibbscert
