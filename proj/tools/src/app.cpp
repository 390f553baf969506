#include "app.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gibbscert/decay.hpp"
#include "gibbscert/model_file.hpp"
#include "report.hpp"

namespace gibbscert::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
    std::string spec;
    std::optional<double> K;
    std::size_t sweeps = 10;
    double tol = 1e-12;
    std::string out;
    bool json = false;
    std::string l1;
    std::string l2;
    std::string f;
    std::string g;
};

struct Outcome {
    Json doc;
    int code = kOk;
    std::string csv;  // sweep text output
};

Json header(const std::string& command, const Options& opt, const LoadedModel& m) {
    Json h;
    h["tool"] = std::string("gibbscert ") + kVersion;
    h["command"] = command;
    h["spec"] = opt.spec;
    h["tol_exact"] = m.spec.tol.exact;
    h["tol_slack"] = m.spec.tol.slack;
    h["cap"] = m.spec.cap;
    return h;
}

Json matrix_json(const Matrix2& M) {
    return Json::array({Json::array({M(0, 0), M(0, 1)}), Json::array({M(1, 0), M(1, 1)})});
}

Json certificate_json(const UniquenessCertificate& c, const LoadedModel& m) {
    Json j;
    j["verdict"] = to_string(c.verdict);
    j["reason"] = c.reason.empty() ? "-" : c.reason;
    j["K"] = c.K;
    j["K_star"] = c.K_star;
    j["A"] = c.A;
    j["M"] = matrix_json(c.M);
    j["r_K"] = c.r_K;
    j["r_K_literal"] = c.r_K_literal;
    j["xi"] = c.xi;
    j["alpha_K"] = c.alpha_K;
    j["C_K"] = c.C_K;
    j["mu_h"] = c.mu_h;
    j["mu_h_source"] = m.mu_h_source;
    j["kappa_bar"] = c.norms.kappa_bar;
    j["c_bar"] = c.norms.c_bar;
    j["kappa_source"] = m.spec.kappa_auto ? "auto" : "given";
    j["delta"] = c.data.delta;
    j["chi"] = c.data.chi;
    j["color_classes"] = m.partition.class_count();
    return j;
}

std::string ids_of(const Graph& g, const std::vector<Vertex>& nb, const std::vector<int>& symbols,
                   const FiniteSpinModel& model) {
    if (symbols.empty()) return "-";
    std::string s;
    for (std::size_t k = 0; k < nb.size(); ++k) {
        if (k) s += ",";
        s += g.id(nb[k]) + "=" + model.alphabet()[static_cast<std::size_t>(symbols[k])];
    }
    return s;
}

Outcome cmd_certify(const Options& opt, const LoadedModel& m) {
    const auto cert = certify(m.params, m.graph, m.K, m.mu_h);
    Outcome o;
    o.doc["header"] = header("certify", opt, m);
    o.doc["certificate"] = certificate_json(cert, m);
    switch (cert.verdict) {
        case Verdict::Unique: o.code = kOk; break;
        case Verdict::Indeterminate: o.code = kNotCertified; break;
        case Verdict::Inadmissible: o.code = kInadmissible; break;
    }
    return o;
}

Outcome cmd_verify(const Options& opt, const LoadedModel& m) {
    const auto report = verify_membership(m.model, m.graph, m.K, m.params, m.spec.tol.exact);
    Outcome o;
    o.doc["header"] = header("verify", opt, m);
    o.doc["K"] = m.K;
    o.doc["pass"] = report.pass;
    Json sites = Json::array();
    Json failures = Json::array();
    for (const auto& s : report.sites) {
        Json row;
        row["site"] = m.graph.id(s.site);
        row["kappa_slack"] = s.kappa_slack;
        row["h_slack"] = s.h_slack;
        row["max_pi_h"] = s.max_pi_h;
        row["multi_site"] = s.kappa_multi_site;
        row["vacuous"] = s.vacuous;
        row["pass"] = s.pass;
        sites.push_back(row);
        if (!s.pass) {
            const auto& nb = m.graph.neighbors(s.site);
            Json fail;
            fail["site"] = m.graph.id(s.site);
            fail["kappa_x"] = ids_of(m.graph, nb, s.kappa_slack < -m.spec.tol.exact ? s.kappa_worst_x : std::vector<int>{}, m.model);
            fail["kappa_y"] = ids_of(m.graph, nb, s.kappa_slack < -m.spec.tol.exact ? s.kappa_worst_y : std::vector<int>{}, m.model);
            fail["h_x"] = ids_of(m.graph, nb, s.h_slack < -m.spec.tol.exact ? s.h_worst_x : std::vector<int>{}, m.model);
            failures.push_back(fail);
        }
    }
    o.doc["sites"] = sites;
    if (!failures.empty()) o.doc["violations"] = failures;
    o.code = report.pass ? kOk : kCheckFailed;
    return o;
}

CheckContext check_context(const LoadedModel& m, const UniquenessCertificate& cert) {
    CheckContext ctx;
    ctx.kappa = m.params.kappa;
    ctx.c = m.params.c;
    ctx.K = m.K;
    ctx.M = cert.M;
    ctx.tol = m.spec.tol;
    return ctx;
}

Outcome cmd_sweep(const Options& opt, const LoadedModel& m) {
    if (!(opt.tol > 0.0)) throw ModelError("--tol must be positive");
    const auto cert = certify(m.params, m.graph, m.K, m.mu_h);
    if (!(m.K > 0.0) || std::isnan(cert.M(0, 0))) throw CriterionError("contraction matrix unavailable: " + cert.reason);
    const ExactMeasure mu = exact_gibbs(m.model, m.graph, m.spec.cap);
    const CouplingTable nu0 = CouplingTable::product(mu, mu, m.spec.cap);
    const Trajectory traj = iterate(nu0, m.partition, m.model, check_context(m, cert), opt.tol, opt.sweeps);
    const bool membership = verify_membership(m.model, m.graph, m.K, m.params, m.spec.tol.exact).pass;
    const bool asserted = membership && cert.verdict == Verdict::Unique;

    Outcome o;
    o.doc["header"] = header("sweep", opt, m);
    o.doc["header"]["initial_coupling"] = "mu x mu";
    o.doc["header"]["stop_tol"] = opt.tol;
    o.doc["header"]["max_sweeps"] = opt.sweeps;
    o.doc["header"]["r_K"] = traj.r_K;
    o.doc["header"]["xi"] = traj.xi;
    o.doc["header"]["checks"] = asserted ? "asserted" : (membership ? "reported (verdict " + std::string(to_string(cert.verdict)) + ")" : "reported (membership fails)");
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "sweep,gamma,lambda,transformed_norm,min_slack\n";
    for (const auto& r : traj.rows) {
        Json row;
        row["sweep"] = r.sweep;
        row["gamma"] = r.gamma;
        row["lambda"] = r.lambda;
        row["transformed_norm"] = r.transformed_norm;
        row["min_slack"] = r.min_slack;
        rows.push_back(row);
        csv << r.sweep << ',' << format_number(r.gamma) << ',' << format_number(r.lambda) << ','
            << format_number(r.transformed_norm) << ',' << format_number(r.min_slack) << '\n';
    }
    o.doc["rows"] = rows;
    o.doc["max_y_complement"] = traj.max_y_complement;
    o.doc["falsifications"] = traj.falsifications;
    for (const auto& f : traj.falsifications) csv << "# falsification: " << f << '\n';
    o.csv = csv.str();
    o.code = asserted && !traj.falsifications.empty() ? kCheckFailed : kOk;
    return o;
}

Observable observable(const std::string& text, Vertex site, const FiniteSpinModel& model, const char* flag) {
    Observable f;
    f.site = site;
    if (text.empty()) {
        f.values = numeric_symbols(model.alphabet());
        return f;
    }
    std::string spaced = text;
    for (auto& ch : spaced) {
        if (ch == ',') ch = ' ';
    }
    std::istringstream is(spaced);
    for (std::string t; is >> t;) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size() || !std::isfinite(v)) throw ModelError(std::string(flag) + ": '" + t + "' is not a number");
        f.values.push_back(v);
    }
    if (f.values.size() != model.alphabet_size()) {
        throw ModelError(std::string(flag) + " needs one value per symbol (" + std::to_string(model.alphabet_size()) + ")");
    }
    return f;
}

Outcome cmd_decay(const Options& opt, const LoadedModel& m) {
    const auto cert = certify(m.params, m.graph, m.K, m.mu_h);
    Outcome o;
    o.doc["header"] = header("decay", opt, m);
    if (!m.graph.contains(opt.l1)) throw ModelError("--l1: unknown vertex '" + opt.l1 + "'");
    if (!m.graph.contains(opt.l2)) throw ModelError("--l2: unknown vertex '" + opt.l2 + "'");
    if (cert.verdict != Verdict::Unique) {
        o.doc["verdict"] = to_string(cert.verdict);
        o.doc["reason"] = cert.reason;
        o.code = kNotCertified;
        return o;
    }
    const Observable f = observable(opt.f, m.graph.index_of(opt.l1), m.model, "--f");
    const Observable g = observable(opt.g, m.graph.index_of(opt.l2), m.model, "--g");
    const DecayReport r = decay_experiment(m.model, m.partition, cert, f, g, m.spec.tol, m.spec.cap);
    o.doc["verdict"] = to_string(cert.verdict);
    o.doc["l1"] = opt.l1;
    o.doc["l2"] = opt.l2;
    o.doc["distance"] = r.distance;
    o.doc["covariance"] = r.covariance;
    o.doc["bound"] = r.bound;
    o.doc["alpha_K"] = r.alpha_K;
    o.doc["C_K"] = r.C_K;
    o.doc["r_K"] = r.r_K;
    o.doc["xi"] = r.xi;
    o.doc["f_sup"] = f.sup_norm();
    o.doc["g_sup"] = g.sup_norm();
    o.doc["conditionings"] = r.conditionings;
    o.doc["reconstruction_residual"] = r.reconstruction_residual;
    o.doc["phi_drift"] = r.phi_drift;
    o.doc["phi_slack"] = r.phi_slack;
    o.doc["localized_slack"] = r.localized_slack;
    o.doc["shell_slack"] = r.shell_slack;
    o.doc["identities_hold"] = r.identities_hold;
    o.doc["inequalities_hold"] = r.inequalities_hold;
    o.doc["bound_holds"] = r.bound_holds;
    o.code = r.pass() ? kOk : kCheckFailed;
    return o;
}

void emit(const Outcome& o, const Options& opt, std::ostream& out) {
    std::ostringstream text;
    if (opt.json) {
        render_json(o.doc, text);
    } else if (!o.csv.empty()) {
        for (auto it = o.doc["header"].begin(); it != o.doc["header"].end(); ++it) {
            text << "# " << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->is_number_float() ? format_number(it->get<double>()) : it->dump()) << '\n';
        }
        text << o.csv;
    } else {
        render_text(o.doc, text);
    }
    if (opt.out.empty()) {
        out << text.str();
        return;
    }
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) throw ModelError("cannot write '" + opt.out + "'");
    file << text.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Uniqueness certificates and exact coupling checks for finite Gibbs specifications", "gibbscert"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--spec", opt.spec, "Model file")->required();
        sub->add_option("--k", opt.K, "Override K");
        sub->add_option("--out", opt.out, "Write the report to this path");
        sub->add_flag("--json", opt.json, "JSON output");
    };
    auto* certify_cmd = app.add_subcommand("certify", "Closed-form criterion and verdict");
    common(certify_cmd);
    auto* sweep_cmd = app.add_subcommand("sweep", "Chromatic sweeps from mu x mu with inequality checks (CSV)");
    common(sweep_cmd);
    sweep_cmd->add_option("--sweeps", opt.sweeps, "Maximum number of sweeps")->capture_default_str();
    sweep_cmd->add_option("--tol", opt.tol, "Stop once gamma drops below this value")->capture_default_str();
    auto* decay_cmd = app.add_subcommand("decay", "Exact covariance against the decay bound");
    common(decay_cmd);
    decay_cmd->add_option("--l1", opt.l1, "Site of f")->required();
    decay_cmd->add_option("--l2", opt.l2, "Site of g")->required();
    decay_cmd->add_option("--f", opt.f, "Values of f per symbol (default: numeric symbols)");
    decay_cmd->add_option("--g", opt.g, "Values of g per symbol (default: numeric symbols)");
    auto* verify_cmd = app.add_subcommand("verify", "Per-site check of the kappa and moment conditions");
    common(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    const std::map<CLI::App*, std::function<Outcome(const Options&, const LoadedModel&)>> commands = {
        {certify_cmd, cmd_certify}, {sweep_cmd, cmd_sweep}, {decay_cmd, cmd_decay}, {verify_cmd, cmd_verify}};
    try {
        const LoadedModel model = load_model(read_model_file(opt.spec), opt.K);
        for (const auto& [sub, fn] : commands) {
            if (!sub->parsed()) continue;
            const Outcome o = fn(opt, model);
            emit(o, opt, out);
            return o.code;
        }
    } catch (const CapExceeded& e) {
        err << "gibbscert: " << e.what() << '\n';
        return kCapExceeded;
    } catch (const std::exception& e) {
        err << "gibbscert: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("gibbscert");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gibbscert::cli
