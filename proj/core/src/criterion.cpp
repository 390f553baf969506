#include "gibbscert/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gibbscert {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double max_row_sum(const EdgeWeights& w, const Graph& g, const char* name) {
    if (w.size() != g.vertex_count()) {
        throw ModelError(std::string(name) + " matrix does not cover every vertex");
    }
    double sup = 0.0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (w[v].size() != g.degree(v)) {
            throw ModelError(std::string(name) + " row for vertex '" + g.id(v) + "' does not match its degree");
        }
        CompensatedSum row;
        for (double x : w[v]) {
            if (!(x >= 0.0) || !std::isfinite(x)) {
                throw ModelError(std::string(name) + " entries must be finite and nonnegative (vertex '" + g.id(v) +
                                 "')");
            }
            row += x;
        }
        sup = std::max(sup, row.value());
    }
    return sup;
}

void fill_admissibility(Norms& n, int delta, int chi) {
    n.kappa_admissible = n.kappa_bar < 1.0;
    const double limit = 1.0 / int_power(delta, chi);
    n.c_admissible = n.c_bar > 0.0 && n.c_bar < limit;
    if (!n.kappa_admissible) {
        n.reason = "inadmissible-kappa: kappa_bar >= 1";
    } else if (n.c_bar == 0.0) {
        n.reason = "inadmissible-c: c_bar = 0";
    } else if (!n.c_admissible) {
        n.reason = "inadmissible-c: c_bar >= delta^-chi";
    }
}

}  // namespace

double int_power(double base, int exponent) {
    double r = 1.0;
    for (int i = 0; i < exponent; ++i) r *= base;
    return r;
}

EdgeWeights uniform_edge_weights(const Graph& g, double value) {
    EdgeWeights w(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) w[v].assign(g.degree(v), value);
    return w;
}

std::array<double, 2> Matrix2::apply(const std::array<double, 2>& v) const {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Unique: return "Unique";
        case Verdict::Indeterminate: return "Indeterminate";
        case Verdict::Inadmissible: return "Inadmissible";
    }
    return "?";
}

Norms norms(const ContractionParams& params, const Graph& g) {
    Norms n;
    n.kappa_bar = max_row_sum(params.kappa, g, "kappa");
    n.c_bar = max_row_sum(params.c, g, "c");
    fill_admissibility(n, params.delta, params.chi);
    return n;
}

double a_constant(double kappa_bar, int delta, int chi) {
    if (!(kappa_bar < 1.0)) throw CriterionError("kappa_bar must be < 1");
    return 2.0 * int_power(delta, chi + 1) / (1.0 - kappa_bar);
}

double k_star(double kappa_bar, double c_bar, int delta, int chi) {
    if (delta < 2) throw CriterionError("delta must be >= 2");
    if (c_bar == 0.0) throw CriterionError("c_bar = 0: the threshold divides by c_bar");
    if (!(kappa_bar < 1.0) || kappa_bar < 0.0) throw CriterionError("kappa_bar must lie in [0, 1)");
    const double d_chi = int_power(delta, chi);
    const double d_chi_up = d_chi * delta;
    const double d_chi_down = d_chi / delta;
    const double one_k = 1.0 - kappa_bar;
    const double one_cd = 1.0 - c_bar * d_chi;
    if (!(one_cd > 0.0)) throw CriterionError("c_bar must be < delta^-chi");
    const double first = 4.0 * d_chi_up / (c_bar * one_k);
    const double second = 2.0 * d_chi_up * (2.0 * d_chi_down + 1.0 - c_bar * d_chi) / (one_k * one_k * one_cd);
    return std::max(first, second);
}

Matrix2 contraction_matrix(const CriterionData& d, double A, double K) {
    if (!(K > 0.0)) throw CriterionError("K must be positive");
    Matrix2 M;
    const double a_over_k = A / K;
    M(0, 0) = d.kappa_bar + a_over_k;
    M(0, 1) = 2.0 * a_over_k;
    M(1, 0) = int_power(d.delta, d.chi - 1);
    M(1, 1) = d.c_bar * int_power(d.delta, d.chi);
    return M;
}

double spectral_radius(const Matrix2& M) {
    const double a = M(0, 0), b = M(0, 1), c = M(1, 0), d = M(1, 1);
    const double diff = a - d;
    return 0.5 * (a + d + std::sqrt(diff * diff + 4.0 * b * c));
}

double literal_radius(const CriterionData& d, double A, double K) {
    const double a = d.kappa_bar + A / K;
    const double cd = d.c_bar * int_power(d.delta, d.chi);
    const double diff = a - cd;
    return 0.5 * (a + cd + std::sqrt(diff * diff + 8.0 * int_power(d.delta, d.chi) * A / K));
}

DecayConstants decay_constants(double r_K, const CriterionData& d, double /*A*/, double /*K*/, double mu_h) {
    if (!(r_K < 1.0)) throw CriterionError("no certificate: r_K >= 1");
    if (!(r_K > 0.0)) throw CriterionError("r_K must be positive");
    if (mu_h < 0.0) throw CriterionError("mu_h must be nonnegative");
    const double cd = d.c_bar * int_power(d.delta, d.chi);
    if (!(r_K > cd)) throw CriterionError("degenerate xi: r_K <= c_bar delta^chi");
    DecayConstants out;
    out.xi = int_power(d.delta, d.chi - 1) / (r_K - cd);
    out.alpha = -std::log(r_K);
    out.prefactor = 2.0 / r_K * std::max(1.0, mu_h / out.xi);
    return out;
}

UniquenessCertificate certify(const CriterionData& d, double K, double mu_h) {
    UniquenessCertificate cert;
    cert.K = K;
    cert.mu_h = mu_h;
    cert.data = d;
    cert.norms.kappa_bar = d.kappa_bar;
    cert.norms.c_bar = d.c_bar;
    cert.K_star = cert.A = cert.r_K = cert.r_K_literal = cert.xi = cert.alpha_K = cert.C_K = kNaN;
    for (auto& row : cert.M.m) row.fill(kNaN);

    if (!(K > 0.0)) throw CriterionError("K must be positive");
    if (d.delta < 2) {
        cert.verdict = Verdict::Inadmissible;
        cert.reason = "max degree " + std::to_string(d.delta) + " < 2; the criterion assumes delta >= 2";
        return cert;
    }
    if (d.chi < 2 || d.chi > d.delta + 1) {
        cert.verdict = Verdict::Inadmissible;
        cert.reason = "chi = " + std::to_string(d.chi) + " outside [2, delta + 1]";
        return cert;
    }
    fill_admissibility(cert.norms, d.delta, d.chi);
    if (!cert.norms.admissible()) {
        cert.verdict = Verdict::Inadmissible;
        cert.reason = cert.norms.reason;
        return cert;
    }

    cert.K_star = k_star(d.kappa_bar, d.c_bar, d.delta, d.chi);
    cert.A = a_constant(d.kappa_bar, d.delta, d.chi);
    cert.M = contraction_matrix(d, cert.A, K);
    cert.r_K = spectral_radius(cert.M);
    cert.r_K_literal = literal_radius(d, cert.A, K);
    if (cert.r_K < 1.0) {
        const DecayConstants dc = decay_constants(cert.r_K, d, cert.A, K, mu_h);
        cert.xi = dc.xi;
        cert.alpha_K = dc.alpha;
        cert.C_K = dc.prefactor;
    }
    if (K > cert.K_star && cert.r_K < 1.0) {
        cert.verdict = Verdict::Unique;
    } else {
        cert.verdict = Verdict::Indeterminate;
        cert.reason = K > cert.K_star ? "r_K >= 1" : "K <= K_star";
    }
    return cert;
}

UniquenessCertificate certify(const ContractionParams& params, const Graph& g, double K, double mu_h) {
    const Norms n = norms(params, g);
    CriterionData d{n.kappa_bar, n.c_bar, params.delta, params.chi};
    return certify(d, K, mu_h);
}

}  // namespace gibbscert
