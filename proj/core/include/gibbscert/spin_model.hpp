#pragma once

#include <map>
#include <string>
#include <vector>

#include "gibbscert/criterion.hpp"
#include "gibbscert/graph.hpp"

namespace gibbscert {

/// Probability vector over the alphabet.
struct LocalDistribution {
    std::vector<double> p;

    [[nodiscard]] std::size_t size() const noexcept { return p.size(); }
    double operator[](std::size_t i) const { return p[i]; }
};

/// Finite-alphabet pair-potential model on a fixed graph.
///
/// The one-site kernel is pi_l^x(a) ~ sigma(a) exp(sum_{l' in dl} W_{l l'}(a, x_{l'})).
/// Potential tables are stored once per undirected edge, oriented from the
/// lower to the higher vertex handle, row-major over the alphabet.
class FiniteSpinModel {
public:
    FiniteSpinModel(const Graph& g, std::vector<std::string> alphabet, std::vector<double> ref_weights,
                    std::vector<double> h_values);

    /// Sets W_{a b}; `table[i*q + j]` is the value for symbol i at `a`, j at `b`.
    void set_potential(Vertex a, Vertex b, const std::vector<double>& table);

    [[nodiscard]] std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
    [[nodiscard]] const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
    [[nodiscard]] const std::vector<double>& ref_weights() const noexcept { return ref_weights_; }
    [[nodiscard]] const std::vector<double>& h_values() const noexcept { return h_; }
    [[nodiscard]] double h(int symbol) const { return h_[static_cast<std::size_t>(symbol)]; }
    [[nodiscard]] std::size_t vertex_count() const noexcept { return neighbor_tables_.size(); }

    /// W_{l l'}(a, b) with the first argument at l.
    [[nodiscard]] double potential(Vertex l, Vertex l_prime, int a, int b) const;

    /// pi_l^x; only the neighbor coordinates of x are read.
    [[nodiscard]] LocalDistribution conditional(Vertex l, const Configuration& x) const;
    /// Same, with the neighbor symbols listed in neighbors(l) order.
    [[nodiscard]] LocalDistribution conditional_from_neighbors(Vertex l, const std::vector<int>& boundary) const;

    [[nodiscard]] const Graph& graph() const noexcept { return graph_; }

private:
    Graph graph_;
    std::vector<std::string> alphabet_;
    std::vector<double> ref_weights_;
    std::vector<double> h_;
    std::vector<std::vector<double>> tables_;  // one per undirected edge, Graph::edges() order
    // neighbor_tables_[l][k]: table of (l, neighbors(l)[k]); transposed when l is the higher endpoint
    struct Slot {
        std::size_t table = 0;
        bool transposed = false;
    };
    std::vector<std::vector<Slot>> neighbor_tables_;
};

/// Ising-type model: symbols are numeric strings, W(a, b) = coupling * a * b on every edge.
FiniteSpinModel make_product_coupling_model(const Graph& g, const std::vector<std::string>& alphabet,
                                            double coupling, std::vector<double> ref_weights,
                                            std::vector<double> h_values);

std::vector<double> numeric_symbols(const std::vector<std::string>& alphabet);

/// pi_l for a neighbor assignment given as a map; throws if a neighbor is missing.
LocalDistribution conditional(const FiniteSpinModel& model, const Graph& g, Vertex l,
                              const std::map<Vertex, int>& boundary);

/// Half the L1 distance.
double tv_distance(const LocalDistribution& p, const LocalDistribution& q);

struct KappaEstimate {
    double value = 0.0;
    bool vacuous = false;  // no admissible neighbor assignment under h <= K
};

/// sup d(pi_l^x, pi_l^y) over neighbor assignments with h <= K at every
/// neighbor that differ only at l_prime.
KappaEstimate estimate_kappa_entry(const FiniteSpinModel& model, const Graph& g, Vertex l, Vertex l_prime, double K);

/// Every directed-edge estimate, aligned with the graph adjacency.
EdgeWeights estimate_kappa(const FiniteSpinModel& model, const Graph& g, double K);

struct SiteMembership {
    Vertex site = 0;
    double kappa_slack = 0.0;  // min over admissible pairs of sum kappa*upsilon - d
    bool kappa_multi_site = false;
    std::vector<int> kappa_worst_x;  // neighbor symbols, neighbors(l) order
    std::vector<int> kappa_worst_y;
    double h_slack = 0.0;  // min over assignments of 1 + sum c h - pi(h)
    std::vector<int> h_worst_x;
    double max_pi_h = 0.0;
    bool vacuous = false;
    bool pass = true;
};

struct MembershipReport {
    double K = 0.0;
    std::vector<SiteMembership> sites;
    bool pass = true;
};

inline constexpr std::size_t kMultiSiteDegreeCap = 3;

/// Checks the kappa estimate on admissible pairs (all disagreement patterns
/// when the degree is at most kMultiSiteDegreeCap, single-site otherwise) and
/// the moment bound pi_l^x(h) <= 1 + sum c h(x_l') for every assignment.
MembershipReport verify_membership(const FiniteSpinModel& model, const Graph& g, double K,
                                   const ContractionParams& params, double tolerance = 1e-12);

}  // namespace gibbscert
