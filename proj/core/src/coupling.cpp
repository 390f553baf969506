#include "gibbscert/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gibbscert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void couple_into(const LocalDistribution& p, const LocalDistribution& q, double* out) {
    const std::size_t n = p.size();
    std::fill(out, out + n * n, 0.0);
    std::vector<double> r1(n), r2(n);
    CompensatedSum d;
    for (std::size_t a = 0; a < n; ++a) {
        const double m = std::min(p[a], q[a]);
        out[a * n + a] = m;
        r1[a] = p[a] - m;
        r2[a] = q[a] - m;
        d += r1[a];
    }
    const double dist = d.value();
    if (dist == 0.0) return;
    for (std::size_t a = 0; a < n; ++a) {
        if (r1[a] == 0.0) continue;
        for (std::size_t b = 0; b < n; ++b) out[a * n + b] += r1[a] * r2[b] / dist;
    }
}

std::vector<Vertex> sweep_order(const ColorPartition& partition, const VertexSet* region) {
    std::vector<Vertex> order;
    for (const auto& cls : partition.classes) {
        for (Vertex v : cls) {
            if (region == nullptr || set_contains(*region, v)) order.push_back(v);
        }
    }
    return order;
}

}  // namespace

double PairDistribution::off_diagonal_mass() const {
    CompensatedSum s;
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = 0; b < q; ++b) {
            if (a != b) s += w[a * q + b];
        }
    }
    return s.value();
}

LocalDistribution PairDistribution::first_marginal() const {
    LocalDistribution m;
    for (std::size_t a = 0; a < q; ++a) {
        CompensatedSum s;
        for (std::size_t b = 0; b < q; ++b) s += w[a * q + b];
        m.p.push_back(s.value());
    }
    return m;
}

LocalDistribution PairDistribution::second_marginal() const {
    LocalDistribution m;
    for (std::size_t b = 0; b < q; ++b) {
        CompensatedSum s;
        for (std::size_t a = 0; a < q; ++a) s += w[a * q + b];
        m.p.push_back(s.value());
    }
    return m;
}

PairDistribution optimal_coupling(const LocalDistribution& p, const LocalDistribution& q) {
    if (p.size() != q.size()) throw ModelError("optimal_coupling: alphabet mismatch");
    PairDistribution out{p.size(), std::vector<double>(p.size() * p.size())};
    couple_into(p, q, out.w.data());
    return out;
}

CouplingTable::CouplingTable(ConfigSpace space, std::vector<double> weights, std::size_t cap)
    : space_(std::move(space)), weights_(std::move(weights)) {
    checked_power(space_.alphabet_size() * space_.alphabet_size(), space_.vertex_count(), cap, "coupling table");
    if (weights_.size() != space_.size() * space_.size()) throw ModelError("coupling table has the wrong size");
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ModelError("coupling weights must be finite and nonnegative");
    }
    if (std::fabs(compensated_total(weights_) - 1.0) > 1e-12) throw ModelError("coupling weights must sum to 1");
}

CouplingTable CouplingTable::product(const ExactMeasure& first, const ExactMeasure& second, std::size_t cap) {
    const std::size_t S = first.space.size();
    if (second.space.size() != S) throw ModelError("product coupling: state spaces differ");
    checked_power(first.space.alphabet_size() * first.space.alphabet_size(), first.space.vertex_count(), cap,
                  "coupling table");
    std::vector<double> w(S * S);
    for (std::size_t x = 0; x < S; ++x) {
        for (std::size_t y = 0; y < S; ++y) w[x * S + y] = first.weights[x] * second.weights[y];
    }
    return CouplingTable(first.space, std::move(w), cap);
}

CouplingTable CouplingTable::diagonal(const ExactMeasure& mu, std::size_t cap) {
    const std::size_t S = mu.space.size();
    checked_power(mu.space.alphabet_size() * mu.space.alphabet_size(), mu.space.vertex_count(), cap, "coupling table");
    std::vector<double> w(S * S, 0.0);
    for (std::size_t x = 0; x < S; ++x) w[x * S + x] = mu.weights[x];
    return CouplingTable(mu.space, std::move(w), cap);
}

std::vector<double> CouplingTable::first_marginal() const {
    const std::size_t S = space_.size();
    std::vector<double> m(S);
    for (std::size_t x = 0; x < S; ++x) {
        CompensatedSum s;
        for (std::size_t y = 0; y < S; ++y) s += weights_[x * S + y];
        m[x] = s.value();
    }
    return m;
}

std::vector<double> CouplingTable::second_marginal() const {
    const std::size_t S = space_.size();
    std::vector<CompensatedSum> acc(S);
    for (std::size_t x = 0; x < S; ++x) {
        for (std::size_t y = 0; y < S; ++y) acc[y] += weights_[x * S + y];
    }
    std::vector<double> m(S);
    for (std::size_t y = 0; y < S; ++y) m[y] = acc[y].value();
    return m;
}

CouplingTable apply_R(const CouplingTable& nu, Vertex site, const FiniteSpinModel& model) {
    const ConfigSpace& space = nu.space();
    const std::size_t S = space.size();
    const std::size_t q = space.alphabet_size();
    if (site >= space.vertex_count()) throw ModelError("apply_R: unknown vertex");
    if (model.alphabet_size() != q || model.vertex_count() != space.vertex_count()) {
        throw ModelError("apply_R: model does not match the coupling's state space");
    }
    const std::size_t stride = space.stride(site);

    // pi_site^x for every x with x_site = 0; the kernel ignores x_site
    std::vector<std::size_t> bases;
    bases.reserve(S / q);
    std::vector<LocalDistribution> kernel(S);
    for (std::size_t x = 0; x < S; ++x) {
        if (space.digit(x, site) != 0) continue;
        bases.push_back(x);
        kernel[x] = model.conditional(site, space.decode(x));
    }

    std::vector<double> out(S * S, 0.0);
    std::vector<double> rho(q * q);
    for (std::size_t xb : bases) {
        for (std::size_t yb : bases) {
            CompensatedSum mass;
            for (std::size_t a = 0; a < q; ++a) {
                for (std::size_t b = 0; b < q; ++b) mass += nu.weights()[(xb + a * stride) * S + yb + b * stride];
            }
            const double w = mass.value();
            if (w == 0.0) continue;
            couple_into(kernel[xb], kernel[yb], rho.data());
            for (std::size_t a = 0; a < q; ++a) {
                for (std::size_t b = 0; b < q; ++b) out[(xb + a * stride) * S + yb + b * stride] = w * rho[a * q + b];
            }
        }
    }
    return CouplingTable(space, std::move(out), std::numeric_limits<std::size_t>::max());
}

double y_complement_mass(const CouplingTable& nu, Vertex site, const Graph& g) {
    const ConfigSpace& space = nu.space();
    const std::size_t S = space.size();
    const auto& nb = g.neighbors(site);
    CompensatedSum mass;
    for (std::size_t x = 0; x < S; ++x) {
        for (std::size_t y = 0; y < S; ++y) {
            const double w = nu.weights()[x * S + y];
            if (w == 0.0 || space.digit(x, site) == space.digit(y, site)) continue;
            const bool agree =
                std::all_of(nb.begin(), nb.end(), [&](Vertex v) { return space.digit(x, v) == space.digit(y, v); });
            if (agree) mass += w;
        }
    }
    return mass.value();
}

double CouplingStats::gamma(const VertexSet& region) const {
    double g = 0.0;
    for (Vertex l : region) g = std::max(g, disagreement[l]);
    return g;
}

double CouplingStats::lambda(const VertexSet& region) const {
    double best = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (Vertex l1 : region) {
            for (Vertex l2 : region) best = std::max(best, IH(i, l1, l2));
        }
    }
    return best;
}

CouplingStats coupling_stats(const CouplingTable& nu, const FiniteSpinModel& model) {
    const ConfigSpace& space = nu.space();
    const std::size_t S = space.size();
    const std::size_t n = space.vertex_count();

    std::vector<int> digits(S * n);
    std::vector<double> hv(S * n);
    for (std::size_t x = 0; x < S; ++x) {
        for (Vertex v = 0; v < n; ++v) {
            digits[x * n + v] = space.digit(x, v);
            hv[x * n + v] = model.h(digits[x * n + v]);
        }
    }

    std::vector<CompensatedSum> dis(n);
    std::array<std::vector<CompensatedSum>, 2> cross{std::vector<CompensatedSum>(n * n),
                                                     std::vector<CompensatedSum>(n * n)};
    std::vector<Vertex> diff;
    diff.reserve(n);
    for (std::size_t x = 0; x < S; ++x) {
        const int* dx = &digits[x * n];
        const double* hx = &hv[x * n];
        for (std::size_t y = 0; y < S; ++y) {
            const double w = nu.weights()[x * S + y];
            if (w == 0.0) continue;
            const int* dy = &digits[y * n];
            const double* hy = &hv[y * n];
            diff.clear();
            for (Vertex v = 0; v < n; ++v) {
                if (dx[v] != dy[v]) diff.push_back(v);
            }
            for (Vertex l : diff) {
                dis[l] += w;
                for (Vertex lp = 0; lp < n; ++lp) {
                    cross[0][l * n + lp] += w * hx[lp];
                    cross[1][l * n + lp] += w * hy[lp];
                }
            }
        }
    }

    CouplingStats st;
    st.n = n;
    st.disagreement.resize(n);
    for (Vertex l = 0; l < n; ++l) st.disagreement[l] = dis[l].value();
    for (int i = 0; i < 2; ++i) {
        auto& dst = st.cross[static_cast<std::size_t>(i)];
        dst.resize(n * n);
        for (std::size_t k = 0; k < n * n; ++k) dst[k] = cross[static_cast<std::size_t>(i)][k].value();
    }
    return st;
}

Functionals functionals(const CouplingTable& nu, const VertexSet& region, const FiniteSpinModel& model) {
    if (region.empty()) throw ModelError("functionals: region must be nonempty");
    const CouplingStats st = coupling_stats(nu, model);
    return {st.gamma(region), st.lambda(region)};
}

double StepSlacks::min() const {
    return std::min({transfer, moment_other, moment_spread, moment_self});
}

StepSlacks step_slacks(const CouplingStats& before, const CouplingStats& after, Vertex site, const Graph& g,
                       const CheckContext& ctx) {
    const auto& nb = g.neighbors(site);
    const auto& kappa = ctx.kappa.at(site);
    const auto& c = ctx.c.at(site);
    const std::size_t n = before.n;
    StepSlacks s{kInf, kInf, kInf, kInf};

    {
        CompensatedSum rhs;
        for (std::size_t k = 0; k < nb.size(); ++k) rhs += kappa[k] * before.I(nb[k]);
        CompensatedSum tail;
        for (int i = 0; i < 2; ++i) {
            for (Vertex l1 : nb) {
                for (Vertex l2 : nb) tail += before.IH(i, l2, l1);
            }
        }
        rhs += tail.value() / ctx.K;
        s.transfer = rhs.value() - after.I(site);
    }

    for (int i = 0; i < 2; ++i) {
        for (Vertex l1 = 0; l1 < n; ++l1) {
            if (l1 == site) continue;
            CompensatedSum other;
            other += before.I(l1);
            for (std::size_t k = 0; k < nb.size(); ++k) other += c[k] * before.IH(i, l1, nb[k]);
            s.moment_other = std::min(s.moment_other, other.value() - after.IH(i, l1, site));

            CompensatedSum spread;
            for (Vertex l2 : nb) spread += before.IH(i, l2, l1);
            s.moment_spread = std::min(s.moment_spread, spread.value() - after.IH(i, site, l1));
        }

        CompensatedSum self;
        for (Vertex l1 : nb) {
            self += before.I(l1);
            for (std::size_t k = 0; k < nb.size(); ++k) self += c[k] * before.IH(i, l1, nb[k]);
        }
        s.moment_self = std::min(s.moment_self, self.value() - after.IH(i, site, site));
    }
    return s;
}

double SweepDiagnostics::worst_step_slack() const {
    double w = kInf;
    for (const auto& a : applications) w = std::min(w, a.slacks.min());
    return w;
}

double SweepDiagnostics::worst_slack() const {
    return std::min(worst_step_slack(), contraction_slack);
}

double SweepDiagnostics::max_y_complement() const {
    double m = 0.0;
    for (const auto& a : applications) m = std::max(m, a.y_complement);
    return m;
}

SweepResult sweep(const CouplingTable& nu, const ColorPartition& partition, const FiniteSpinModel& model,
                  const CheckContext& ctx) {
    const Graph& g = model.graph();
    if (!is_valid_partition(g, partition)) throw ModelError("sweep: partition is not valid for the graph");
    const VertexSet everything = all_vertices(g);

    SweepResult result{nu, {}};
    CouplingStats current = coupling_stats(nu, model);
    result.diagnostics.start = {current.gamma(everything), current.lambda(everything)};

    for (Vertex site : sweep_order(partition, nullptr)) {
        CouplingTable next = apply_R(result.table, site, model);
        CouplingStats after = coupling_stats(next, model);
        ApplicationRecord rec;
        rec.site = site;
        rec.gamma_before = current.gamma(everything);
        rec.lambda_before = current.lambda(everything);
        rec.gamma_after = after.gamma(everything);
        rec.lambda_after = after.lambda(everything);
        rec.slacks = step_slacks(current, after, site, g, ctx);
        rec.y_complement = y_complement_mass(next, site, g);
        result.diagnostics.applications.push_back(rec);
        result.table = std::move(next);
        current = std::move(after);
    }

    auto& d = result.diagnostics;
    d.end = {current.gamma(everything), current.lambda(everything)};
    d.bound = ctx.M.apply({d.start.gamma, d.start.lambda});
    d.contraction_slack = std::min(d.bound[0] - d.end.gamma, d.bound[1] - d.end.lambda);
    return result;
}

double similarity_weight(const Matrix2& M) {
    const double r = spectral_radius(M);
    if (!(r > M(1, 1))) return kNaN;
    return M(1, 0) / (r - M(1, 1));
}

Trajectory iterate(const CouplingTable& nu0, const ColorPartition& partition, const FiniteSpinModel& model,
                   const CheckContext& ctx, double stop_tol, std::size_t max_sweeps) {
    if (!(stop_tol > 0.0)) throw ModelError("iterate: tolerance must be positive");
    const Graph& g = model.graph();
    const VertexSet everything = all_vertices(g);

    Trajectory traj;
    traj.r_K = spectral_radius(ctx.M);
    traj.xi = similarity_weight(ctx.M);
    traj.worst_slack = kInf;
    auto norm_of = [&](double gamma, double lambda) {
        return std::isnan(traj.xi) ? kNaN : std::max(traj.xi * gamma, lambda);
    };

    const CouplingStats st0 = coupling_stats(nu0, model);
    TrajectoryRow row0;
    row0.gamma = st0.gamma(everything);
    row0.lambda = st0.lambda(everything);
    row0.transformed_norm = norm_of(row0.gamma, row0.lambda);
    row0.min_slack = kInf;
    traj.rows.push_back(row0);

    CouplingTable current = nu0;
    for (std::size_t n = 1; n <= max_sweeps; ++n) {
        if (traj.rows.back().gamma < stop_tol) break;
        SweepResult res = sweep(current, partition, model, ctx);
        const auto& d = res.diagnostics;
        TrajectoryRow row;
        row.sweep = n;
        row.gamma = d.end.gamma;
        row.lambda = d.end.lambda;
        row.transformed_norm = norm_of(row.gamma, row.lambda);
        row.min_slack = d.worst_slack();
        traj.worst_slack = std::min(traj.worst_slack, row.min_slack);
        traj.max_y_complement = std::max(traj.max_y_complement, d.max_y_complement());

        for (const auto& a : d.applications) {
            if (a.slacks.min() < -ctx.tol.slack) {
                traj.falsifications.push_back("sweep " + std::to_string(n) + ": one-step inequality violated at '" +
                                              g.id(a.site) + "' (slack " + std::to_string(a.slacks.min()) + ")");
            }
        }
        if (d.contraction_slack < -ctx.tol.slack) {
            traj.falsifications.push_back("sweep " + std::to_string(n) + ": (gamma, lambda) exceeds M(K) bound (slack " +
                                          std::to_string(d.contraction_slack) + ")");
        }
        const double prev = traj.rows.back().transformed_norm;
        if (!std::isnan(row.transformed_norm) &&
            row.transformed_norm > (traj.r_K + kContractionFactorSlack) * prev + ctx.tol.exact) {
            traj.falsifications.push_back("sweep " + std::to_string(n) + ": transformed norm did not contract by r_K");
        }
        traj.rows.push_back(row);
        current = std::move(res.table);
    }
    if (traj.worst_slack == kInf) traj.worst_slack = 0.0;
    return traj;
}

ShellTrajectory localized_sweep(const ExactMeasure& mu, const FiniteSpinModel& model, const ColorPartition& partition,
                                Vertex center, std::size_t N, const CheckContext& ctx, const Observable* f,
                                std::size_t cap) {
    const Graph& g = model.graph();
    if (N == 0) throw ModelError("localized_sweep: N must be at least 1");
    const ConfigSpace& space = mu.space;
    checked_power(space.alphabet_size() * space.alphabet_size(), space.vertex_count(), cap, "coupling table");

    ShellTrajectory out;
    out.N = N;
    out.shells = shells(g, center, N);
    out.worst_slack = kInf;
    const VertexSet& outer = out.shells.back();
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!set_contains(outer, v)) out.outside.push_back(v);
    }

    const std::size_t S = space.size();
    const int q = static_cast<int>(space.alphabet_size());
    const double mean_f = f != nullptr ? expectation(mu, *f) : 0.0;
    auto phi_of = [&](const CouplingTable& nu) {
        CompensatedSum s;
        for (std::size_t x = 0; x < S; ++x) {
            const double fx = (*f)(space, x);
            for (std::size_t y = 0; y < S; ++y) {
                const double w = nu(x, y);
                if (w != 0.0) s += w * (fx - (*f)(space, y));
            }
        }
        return s.value();
    };

    Configuration x(g.vertex_count(), 0);
    bool more = true;
    while (more) {
        ShellRun run;
        run.x = x;
        const ExactMeasure conditioned = conditional_measure(mu, outer, x);
        {
            CompensatedSum cyl;
            for (std::size_t idx = 0; idx < S; ++idx) {
                const bool match = std::all_of(out.outside.begin(), out.outside.end(),
                                               [&](Vertex v) { return space.digit(idx, v) == x[v]; });
                if (match) cyl += mu.weights[idx];
            }
            run.weight = cyl.value();
        }
        if (f != nullptr) run.phi = expectation(conditioned, *f) - mean_f;

        CouplingTable nu = CouplingTable::product(conditioned, mu, cap);
        CouplingStats st = coupling_stats(nu, model);
        ShellStep step0;
        step0.gamma = st.gamma(outer);
        step0.lambda = st.lambda(outer);
        step0.bound_gamma = step0.bound_lambda = kNaN;
        step0.slack = kInf;
        if (f != nullptr) step0.phi = phi_of(nu);
        run.steps.push_back(step0);

        for (std::size_t s = 1; s < N; ++s) {
            const VertexSet& region = out.shells[N - s - 1];
            for (Vertex v : sweep_order(partition, &region)) nu = apply_R(nu, v, model);
            st = coupling_stats(nu, model);
            const ShellStep& prev = run.steps.back();
            ShellStep step;
            step.s = s;
            step.gamma = st.gamma(region);
            step.lambda = st.lambda(region);
            const auto bound = ctx.M.apply({prev.gamma, prev.lambda});
            step.bound_gamma = bound[0];
            step.bound_lambda = bound[1];
            step.slack = std::min(bound[0] - step.gamma, bound[1] - step.lambda);
            if (f != nullptr) step.phi = phi_of(nu);
            out.worst_slack = std::min(out.worst_slack, step.slack);
            run.steps.push_back(step);
        }
        out.runs.push_back(std::move(run));

        // next assignment of the outside coordinates
        more = false;
        for (Vertex v : out.outside) {
            if (++x[v] < q) {
                more = true;
                break;
            }
            x[v] = 0;
        }
    }
    if (out.worst_slack == kInf) out.worst_slack = 0.0;
    return out;
}

}  // namespace gibbscert
