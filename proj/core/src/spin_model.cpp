#include "gibbscert/spin_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gibbscert {

namespace {

// Advances a base-q odometer; returns false after the last assignment.
bool next_assignment(std::vector<int>& digits, int q) {
    for (auto& d : digits) {
        if (++d < q) return true;
        d = 0;
    }
    return false;
}

bool admissible(const FiniteSpinModel& model, const std::vector<int>& boundary, double K) {
    return std::all_of(boundary.begin(), boundary.end(), [&](int s) { return model.h(s) <= K; });
}

}  // namespace

FiniteSpinModel::FiniteSpinModel(const Graph& g, std::vector<std::string> alphabet, std::vector<double> ref_weights,
                                 std::vector<double> h_values)
    : graph_(g), alphabet_(std::move(alphabet)), ref_weights_(std::move(ref_weights)), h_(std::move(h_values)) {
    const std::size_t q = alphabet_.size();
    if (q == 0) throw ModelError("alphabet is empty");
    {
        auto sorted = alphabet_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw ModelError("alphabet contains a repeated symbol");
        }
    }
    if (ref_weights_.empty()) ref_weights_.assign(q, 1.0 / static_cast<double>(q));
    if (ref_weights_.size() != q) throw ModelError("ref_weights length does not match alphabet");
    for (double w : ref_weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) throw ModelError("ref_weights must be strictly positive");
    }
    if (std::fabs(compensated_total(ref_weights_) - 1.0) > 1e-12) throw ModelError("ref_weights must sum to 1");
    if (h_.empty()) h_.assign(q, 0.0);
    if (h_.size() != q) throw ModelError("h length does not match alphabet");
    for (double v : h_) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ModelError("h must be finite and nonnegative");
    }

    const auto edges = graph_.edges();
    tables_.assign(edges.size(), std::vector<double>(q * q, 0.0));
    neighbor_tables_.resize(graph_.vertex_count());
    for (Vertex v = 0; v < graph_.vertex_count(); ++v) neighbor_tables_[v].resize(graph_.degree(v));
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [a, b] = edges[e];
        neighbor_tables_[a][graph_.neighbor_slot(a, b)] = {e, false};
        neighbor_tables_[b][graph_.neighbor_slot(b, a)] = {e, true};
    }
}

void FiniteSpinModel::set_potential(Vertex a, Vertex b, const std::vector<double>& table) {
    const std::size_t q = alphabet_.size();
    if (table.size() != q * q) {
        throw ModelError("potential table for '" + graph_.id(a) + "-" + graph_.id(b) + "' must have " +
                         std::to_string(q * q) + " entries");
    }
    for (double w : table) {
        if (!std::isfinite(w)) throw ModelError("potential entries must be finite");
    }
    const Slot slot = neighbor_tables_.at(a).at(graph_.neighbor_slot(a, b));
    auto& dst = tables_[slot.table];
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            // stored with the lower handle as row
            if (slot.transposed) {
                dst[j * q + i] = table[i * q + j];
            } else {
                dst[i * q + j] = table[i * q + j];
            }
        }
    }
}

double FiniteSpinModel::potential(Vertex l, Vertex l_prime, int a, int b) const {
    const Slot slot = neighbor_tables_.at(l).at(graph_.neighbor_slot(l, l_prime));
    const std::size_t q = alphabet_.size();
    const auto& t = tables_[slot.table];
    const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    return slot.transposed ? t[ub * q + ua] : t[ua * q + ub];
}

LocalDistribution FiniteSpinModel::conditional_from_neighbors(Vertex l, const std::vector<int>& boundary) const {
    const std::size_t q = alphabet_.size();
    const auto& slots = neighbor_tables_.at(l);
    if (boundary.size() != slots.size()) throw ModelError("boundary does not assign every neighbor");
    std::vector<double> logw(q);
    for (std::size_t a = 0; a < q; ++a) {
        double e = std::log(ref_weights_[a]);
        for (std::size_t k = 0; k < slots.size(); ++k) {
            const auto& t = tables_[slots[k].table];
            const auto b = static_cast<std::size_t>(boundary[k]);
            e += slots[k].transposed ? t[b * q + a] : t[a * q + b];
        }
        logw[a] = e;
    }
    const double top = *std::max_element(logw.begin(), logw.end());
    LocalDistribution out;
    out.p.resize(q);
    CompensatedSum z;
    for (std::size_t a = 0; a < q; ++a) {
        out.p[a] = std::exp(logw[a] - top);
        z += out.p[a];
    }
    const double norm = z.value();
    for (auto& v : out.p) v /= norm;
    return out;
}

LocalDistribution FiniteSpinModel::conditional(Vertex l, const Configuration& x) const {
    const auto& nb = graph_.neighbors(l);
    std::vector<int> boundary(nb.size());
    for (std::size_t k = 0; k < nb.size(); ++k) boundary[k] = x[nb[k]];
    return conditional_from_neighbors(l, boundary);
}

std::vector<double> numeric_symbols(const std::vector<std::string>& alphabet) {
    std::vector<double> out;
    out.reserve(alphabet.size());
    for (const auto& s : alphabet) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty()) throw ModelError("symbol '" + s + "' is not numeric");
        out.push_back(v);
    }
    return out;
}

FiniteSpinModel make_product_coupling_model(const Graph& g, const std::vector<std::string>& alphabet, double coupling,
                                            std::vector<double> ref_weights, std::vector<double> h_values) {
    FiniteSpinModel model(g, alphabet, std::move(ref_weights), std::move(h_values));
    const auto values = numeric_symbols(alphabet);
    const std::size_t q = values.size();
    std::vector<double> table(q * q);
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < q; ++j) table[i * q + j] = coupling * values[i] * values[j];
    }
    for (const auto& [a, b] : g.edges()) model.set_potential(a, b, table);
    return model;
}

LocalDistribution conditional(const FiniteSpinModel& model, const Graph& g, Vertex l,
                              const std::map<Vertex, int>& boundary) {
    const auto& nb = g.neighbors(l);
    std::vector<int> symbols(nb.size());
    for (std::size_t k = 0; k < nb.size(); ++k) {
        auto it = boundary.find(nb[k]);
        if (it == boundary.end()) {
            throw ModelError("boundary is missing neighbor '" + g.id(nb[k]) + "' of vertex '" + g.id(l) + "'");
        }
        if (it->second < 0 || static_cast<std::size_t>(it->second) >= model.alphabet_size()) {
            throw ModelError("boundary symbol out of range at '" + g.id(nb[k]) + "'");
        }
        symbols[k] = it->second;
    }
    return model.conditional_from_neighbors(l, symbols);
}

double tv_distance(const LocalDistribution& p, const LocalDistribution& q) {
    if (p.size() != q.size()) throw ModelError("tv_distance: alphabet mismatch");
    CompensatedSum s;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
    return 0.5 * s.value();
}

KappaEstimate estimate_kappa_entry(const FiniteSpinModel& model, const Graph& g, Vertex l, Vertex l_prime, double K) {
    const std::size_t slot = g.neighbor_slot(l, l_prime);
    const int q = static_cast<int>(model.alphabet_size());
    std::vector<int> x(g.degree(l), 0);
    KappaEstimate out;
    out.vacuous = true;
    do {
        if (!admissible(model, x, K)) continue;
        const LocalDistribution px = model.conditional_from_neighbors(l, x);
        std::vector<int> y = x;
        for (int b = 0; b < q; ++b) {
            if (b == x[slot] || model.h(b) > K) continue;
            y[slot] = b;
            out.vacuous = false;
            out.value = std::max(out.value, tv_distance(px, model.conditional_from_neighbors(l, y)));
        }
    } while (next_assignment(x, q));
    return out;
}

EdgeWeights estimate_kappa(const FiniteSpinModel& model, const Graph& g, double K) {
    EdgeWeights w(g.vertex_count());
    for (Vertex l = 0; l < g.vertex_count(); ++l) {
        for (Vertex lp : g.neighbors(l)) w[l].push_back(estimate_kappa_entry(model, g, l, lp, K).value);
    }
    return w;
}

MembershipReport verify_membership(const FiniteSpinModel& model, const Graph& g, double K,
                                   const ContractionParams& params, double tolerance) {
    MembershipReport report;
    report.K = K;
    const int q = static_cast<int>(model.alphabet_size());
    constexpr double kInf = std::numeric_limits<double>::infinity();

    for (Vertex l = 0; l < g.vertex_count(); ++l) {
        SiteMembership site;
        site.site = l;
        site.kappa_slack = kInf;
        site.h_slack = kInf;
        site.vacuous = true;
        const std::size_t deg = g.degree(l);
        const auto& kappa = params.kappa.at(l);
        const auto& c = params.c.at(l);
        site.kappa_multi_site = deg <= kMultiSiteDegreeCap;

        std::vector<int> x(deg, 0);
        do {
            // moment bound holds for every assignment, admissible or not
            const LocalDistribution px = model.conditional_from_neighbors(l, x);
            CompensatedSum pih;
            CompensatedSum rhs;
            rhs += 1.0;
            for (int a = 0; a < q; ++a) pih += px[static_cast<std::size_t>(a)] * model.h(a);
            for (std::size_t k = 0; k < deg; ++k) rhs += c[k] * model.h(x[k]);
            site.max_pi_h = std::max(site.max_pi_h, pih.value());
            const double hs = rhs.value() - pih.value();
            if (hs < site.h_slack) {
                site.h_slack = hs;
                site.h_worst_x = x;
            }

            if (!admissible(model, x, K)) continue;
            site.vacuous = false;
            auto check_pair = [&](const std::vector<int>& y) {
                CompensatedSum bound;
                for (std::size_t k = 0; k < deg; ++k) {
                    if (x[k] != y[k]) bound += kappa[k];
                }
                const double s = bound.value() - tv_distance(px, model.conditional_from_neighbors(l, y));
                if (s < site.kappa_slack) {
                    site.kappa_slack = s;
                    site.kappa_worst_x = x;
                    site.kappa_worst_y = y;
                }
            };
            if (site.kappa_multi_site) {
                std::vector<int> y(deg, 0);
                do {
                    if (admissible(model, y, K)) check_pair(y);
                } while (next_assignment(y, q));
            } else {
                std::vector<int> y = x;
                for (std::size_t k = 0; k < deg; ++k) {
                    for (int b = 0; b < q; ++b) {
                        if (b == x[k] || model.h(b) > K) continue;
                        y[k] = b;
                        check_pair(y);
                    }
                    y[k] = x[k];
                }
            }
        } while (next_assignment(x, q));

        if (site.vacuous) site.kappa_slack = 0.0;
        if (site.kappa_slack == kInf) site.kappa_slack = 0.0;
        site.pass = site.kappa_slack >= -tolerance && site.h_slack >= -tolerance;
        report.pass = report.pass && site.pass;
        report.sites.push_back(std::move(site));
    }
    return report;
}

}  // namespace gibbscert
