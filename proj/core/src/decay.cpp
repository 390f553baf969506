#include "gibbscert/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gibbscert {

DecayReport decay_experiment(const FiniteSpinModel& model, const ColorPartition& partition,
                             const UniquenessCertificate& cert, const Observable& f, const Observable& g,
                             const Tolerances& tol, std::size_t cap) {
    if (cert.verdict != Verdict::Unique) throw CriterionError("decay experiment requires a Unique certificate");
    const Graph& graph = model.graph();
    if (f.site >= graph.vertex_count() || g.site >= graph.vertex_count()) throw ModelError("observable site unknown");
    if (f.site == g.site) throw ModelError("decay experiment needs observables at distinct sites");
    if (f.values.size() != model.alphabet_size() || g.values.size() != model.alphabet_size()) {
        throw ModelError("observable needs one value per symbol");
    }

    const ExactMeasure mu = exact_gibbs(model, graph, cap);
    DecayReport rep;
    rep.l1 = f.site;
    rep.l2 = g.site;
    rep.distance = path_distance(graph, f.site, g.site);
    rep.covariance = covariance(mu, f, g);
    rep.alpha_K = cert.alpha_K;
    rep.C_K = cert.C_K;
    rep.r_K = cert.r_K;
    rep.xi = cert.xi;
    rep.bound = cert.C_K * f.sup_norm() * g.sup_norm() * std::exp(-cert.alpha_K * static_cast<double>(rep.distance));

    CheckContext ctx;
    ctx.K = cert.K;
    ctx.M = cert.M;
    ctx.tol = tol;
    const std::size_t N = rep.distance;
    const ShellTrajectory shells = localized_sweep(mu, model, partition, f.site, N, ctx, &f, cap);
    rep.conditionings = shells.runs.size();
    rep.shell_slack = shells.worst_slack;

    constexpr double kInf = std::numeric_limits<double>::infinity();
    rep.phi_slack = kInf;
    rep.localized_slack = kInf;
    const double decay = std::pow(cert.r_K, static_cast<double>(N - 1));
    CompensatedSum reconstructed;
    for (const auto& run : shells.runs) {
        reconstructed += run.weight * g.values[static_cast<std::size_t>(run.x[g.site])] * run.phi;
        for (const auto& step : run.steps) rep.phi_drift = std::max(rep.phi_drift, std::fabs(step.phi - run.phi));
        const ShellStep& first = run.steps.front();
        const ShellStep& last = run.steps.back();
        rep.phi_slack = std::min(rep.phi_slack, 2.0 * f.sup_norm() * last.gamma - std::fabs(run.phi));
        const double target = decay * std::max(first.gamma, first.lambda / cert.xi);
        rep.localized_slack = std::min(rep.localized_slack, target - last.gamma);
    }
    rep.reconstruction_residual = std::fabs(rep.covariance - reconstructed.value());

    rep.identities_hold = rep.reconstruction_residual <= tol.exact && rep.phi_drift <= tol.exact;
    rep.inequalities_hold =
        rep.shell_slack >= -tol.slack && rep.phi_slack >= -tol.slack && rep.localized_slack >= -tol.slack;
    rep.bound_holds = std::fabs(rep.covariance) <= rep.bound;
    return rep;
}

}  // namespace gibbscert
