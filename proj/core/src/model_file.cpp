#include "gibbscert/model_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "gibbscert/gibbs.hpp"

namespace gibbscert {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

class LineParser {
public:
    LineParser(const std::string& source, int line) : source_(source), line_(line) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(source_ + ":" + std::to_string(line_) + ": " + what);
    }

    double number(const std::string& t) const {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size() || !std::isfinite(v)) fail("'" + t + "' is not a finite number");
        return v;
    }

    std::vector<double> numbers(const std::string& value) const {
        std::vector<double> out;
        for (const auto& t : tokens(value)) out.push_back(number(t));
        if (out.empty()) fail("expected at least one number");
        return out;
    }

    double scalar(const std::string& value) const {
        const auto v = numbers(value);
        if (v.size() != 1) fail("expected a single number");
        return v.front();
    }

    std::pair<std::string, std::string> split(const std::string& t, char sep) const {
        const auto pos = t.find(sep);
        if (pos == std::string::npos || pos == 0 || pos + 1 == t.size() ||
            t.find(sep, pos + 1) != std::string::npos) {
            fail("expected '" + std::string(1, sep) + "'-separated pair, got '" + t + "'");
        }
        return {t.substr(0, pos), t.substr(pos + 1)};
    }

    int line() const noexcept { return line_; }

private:
    const std::string& source_;
    int line_;
};

const std::set<std::string> kScalarKeys = {"edges", "alphabet", "ref_weights", "h",         "coupling",  "kappa", "c",
                                           "K",     "chi",      "mu_h",        "tol_exact", "tol_slack", "cap"};

Vertex lookup(const Graph& g, const std::string& id, const std::string& source, int line) {
    if (!g.contains(id)) throw ParseError(source + ":" + std::to_string(line) + ": unknown vertex '" + id + "'");
    return g.index_of(id);
}

void apply_overrides(EdgeWeights& w, const std::vector<EdgeValue>& overrides, const Graph& g,
                     const std::string& source, const char* key) {
    for (const auto& o : overrides) {
        const Vertex a = lookup(g, o.from, source, o.line);
        const Vertex b = lookup(g, o.to, source, o.line);
        if (!g.adjacent(a, b)) {
            throw ParseError(source + ":" + std::to_string(o.line) + ": " + key + " given for non-edge '" + o.from +
                             ">" + o.to + "'");
        }
        w[a][g.neighbor_slot(a, b)] = o.value;
    }
}

}  // namespace

ModelSpec parse_model_spec(std::istream& in, const std::string& source) {
    ModelSpec spec;
    spec.source = source;
    std::set<std::string> seen;
    std::set<std::pair<std::string, std::string>> seen_edges;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const LineParser p(source, line_no);
        const std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) p.fail("expected 'key = value'");
        const std::string lhs = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto key_parts = tokens(lhs);
        if (key_parts.empty()) p.fail("missing key");
        const std::string& key = key_parts[0];

        if (key_parts.size() == 2) {
            if (key == "potential") {
                const auto [a, b] = p.split(key_parts[1], '-');
                if (!seen_edges.insert({std::min(a, b), std::max(a, b)}).second) {
                    p.fail("potential for '" + key_parts[1] + "' given twice");
                }
                spec.potentials.push_back({a, b, p.numbers(value), line_no});
            } else if (key == "kappa" || key == "c") {
                const auto [a, b] = p.split(key_parts[1], '>');
                const double v = p.scalar(value);
                if (v < 0.0) p.fail(key + " entries must be nonnegative");
                if (!seen.insert(key + " " + key_parts[1]).second) p.fail("duplicate key '" + lhs + "'");
                (key == "kappa" ? spec.kappa_overrides : spec.c_overrides).push_back({a, b, v, line_no});
            } else {
                p.fail("unknown key '" + lhs + "'");
            }
            continue;
        }
        if (key_parts.size() != 1 || kScalarKeys.count(key) == 0) p.fail("unknown key '" + lhs + "'");
        if (!seen.insert(key).second) p.fail("duplicate key '" + key + "'");
        if (value.empty()) p.fail("missing value for '" + key + "'");

        if (key == "edges") {
            for (const auto& t : tokens(value)) spec.edges.push_back(p.split(t, '-'));
        } else if (key == "alphabet") {
            spec.alphabet = tokens(value);
        } else if (key == "ref_weights") {
            spec.ref_weights = p.numbers(value);
        } else if (key == "h") {
            spec.h_values = p.numbers(value);
        } else if (key == "coupling") {
            spec.coupling = p.scalar(value);
        } else if (key == "kappa") {
            if (value == "auto") {
                spec.kappa_auto = true;
            } else {
                spec.kappa_auto = false;
                spec.kappa_default = p.scalar(value);
                if (spec.kappa_default < 0.0) p.fail("kappa must be nonnegative");
            }
        } else if (key == "c") {
            spec.c_default = p.scalar(value);
            if (spec.c_default < 0.0) p.fail("c must be nonnegative");
        } else if (key == "K") {
            spec.K = p.scalar(value);
            if (!(*spec.K > 0.0)) p.fail("K must be positive");
        } else if (key == "chi") {
            const double v = p.scalar(value);
            if (v != std::floor(v) || v < 1.0 || v > 1e6) p.fail("chi must be a positive integer");
            spec.chi = static_cast<int>(v);
        } else if (key == "mu_h") {
            spec.mu_h = p.scalar(value);
            if (*spec.mu_h < 0.0) p.fail("mu_h must be nonnegative");
        } else if (key == "tol_exact" || key == "tol_slack") {
            const double v = p.scalar(value);
            if (!(v > 0.0)) p.fail(key + " must be positive");
            (key == "tol_exact" ? spec.tol.exact : spec.tol.slack) = v;
        } else if (key == "cap") {
            const double v = p.scalar(value);
            if (v != std::floor(v) || v < 1.0 || v > 9.0e15) p.fail("cap must be a positive integer");
            spec.cap = static_cast<std::size_t>(v);
        }
    }
    if (spec.edges.empty()) throw ParseError(source + ": missing 'edges'");
    if (spec.alphabet.empty()) throw ParseError(source + ": missing 'alphabet'");
    if (spec.coupling && !spec.potentials.empty()) {
        throw ParseError(source + ": 'coupling' and 'potential' lines are mutually exclusive");
    }
    return spec;
}

ModelSpec read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    return parse_model_spec(in, path);
}

LoadedModel load_model(const ModelSpec& spec, std::optional<double> K_override) {
    const std::optional<double> K = K_override ? K_override : spec.K;
    if (!K) throw ParseError(spec.source + ": missing 'K'");
    if (!(*K > 0.0)) throw ModelError("K must be positive");

    Graph graph = build_graph(spec.edges);
    FiniteSpinModel model = spec.coupling
                                ? make_product_coupling_model(graph, spec.alphabet, *spec.coupling, spec.ref_weights,
                                                              spec.h_values)
                                : FiniteSpinModel(graph, spec.alphabet, spec.ref_weights, spec.h_values);
    for (const auto& pot : spec.potentials) {
        const Vertex a = lookup(graph, pot.a, spec.source, pot.line);
        const Vertex b = lookup(graph, pot.b, spec.source, pot.line);
        if (!graph.adjacent(a, b)) {
            throw ParseError(spec.source + ":" + std::to_string(pot.line) + ": potential given for non-edge '" +
                             pot.a + "-" + pot.b + "'");
        }
        try {
            model.set_potential(a, b, pot.table);
        } catch (const ModelError& e) {
            throw ParseError(spec.source + ":" + std::to_string(pot.line) + ": " + e.what());
        }
    }

    ColorPartition partition = greedy_color(graph);
    ContractionParams params;
    params.delta = static_cast<int>(max_degree(graph));
    params.chi = static_cast<int>(partition.class_count());
    if (spec.chi) {
        if (*spec.chi < params.chi) {
            throw ModelError("chi = " + std::to_string(*spec.chi) + " is below the " +
                             std::to_string(params.chi) + " classes of the greedy partition");
        }
        params.chi = *spec.chi;
    }
    params.kappa = spec.kappa_auto ? estimate_kappa(model, graph, *K) : uniform_edge_weights(graph, spec.kappa_default);
    apply_overrides(params.kappa, spec.kappa_overrides, graph, spec.source, "kappa");
    params.c = uniform_edge_weights(graph, spec.c_default);
    apply_overrides(params.c, spec.c_overrides, graph, spec.source, "c");

    double mu_h = 0.0;
    std::string source;
    if (spec.mu_h) {
        mu_h = *spec.mu_h;
        source = "override";
    } else {
        try {
            mu_h = h_moment(exact_gibbs(model, graph, spec.cap), model);
            source = "exact";
        } catch (const CapExceeded&) {
            mu_h = *std::max_element(model.h_values().begin(), model.h_values().end());
            source = "max h";
        }
    }

    return LoadedModel{spec,   std::move(graph), std::move(model), std::move(partition), std::move(params), *K,
                       mu_h, std::move(source)};
}

}  // namespace gibbscert
