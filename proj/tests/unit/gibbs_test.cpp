#include <gtest/gtest.h>

#include <cmath>

#include "gibbscert/decay.hpp"
#include "support.hpp"

namespace gibbscert {
namespace {

const std::vector<std::string> kSpins{"-1", "+1"};

FiniteSpinModel ising(const Graph& g, double beta, std::vector<double> h = {}) {
    return make_product_coupling_model(g, kSpins, beta, {}, std::move(h));
}

Observable spin_at(Vertex v) { return {v, {-1.0, 1.0}}; }

TEST(ExactGibbs, ZeroPotentialIsProductOfReferenceWeights) {
    const Graph g = build_graph(testing::path_edges(3));
    const FiniteSpinModel m(g, {"x", "y"}, {0.3, 0.7}, {});
    const auto mu = exact_gibbs(m, g);
    const auto prod = product_measure(m, g);
    for (std::size_t i = 0; i < mu.weights.size(); ++i) EXPECT_NEAR(mu.weights[i], prod.weights[i], 1e-15);
    EXPECT_NEAR(mu.weights[0], 0.3 * 0.3 * 0.3, 1e-15);
}

TEST(ExactGibbs, TwoSiteHandNormalization) {
    const double beta = 0.37;
    const Graph g = build_graph({{"a", "b"}});
    const auto mu = exact_gibbs(ising(g, beta), g);
    const double z = 2.0 * std::exp(beta) + 2.0 * std::exp(-beta);
    EXPECT_NEAR(mu.weights[0], std::exp(beta) / z, 1e-15);   // (-,-)
    EXPECT_NEAR(mu.weights[1], std::exp(-beta) / z, 1e-15);  // (+,-)
    EXPECT_NEAR(mu.weights[2], std::exp(-beta) / z, 1e-15);
    EXPECT_NEAR(mu.weights[3], std::exp(beta) / z, 1e-15);
    EXPECT_NEAR(mu.total(), 1.0, 1e-15);
}

TEST(ExactGibbs, CapIsEnforced) {
    const Graph g = build_graph(testing::path_edges(6));
    EXPECT_THROW(exact_gibbs(ising(g, 0.1), g, 32), CapExceeded);
    EXPECT_NO_THROW(exact_gibbs(ising(g, 0.1), g, 64));
}

TEST(Consistency, ExactGibbsIsConsistent) {
    const Graph g = build_graph(testing::cycle_edges(5));
    const auto m = ising(g, 0.8);
    EXPECT_LT(check_consistency(exact_gibbs(m, g), m), 1e-12);
}

TEST(Consistency, ProductMeasureIsInconsistentWithCoupling) {
    const Graph g = build_graph(testing::path_edges(3));
    const auto m = ising(g, 0.5);
    EXPECT_GT(check_consistency(product_measure(m, g), m), 1e-3);
}

TEST(Consistency, ProductMeasureIsConsistentAtZeroCoupling) {
    const Graph g = build_graph(testing::path_edges(3));
    const auto m = ising(g, 0.0);
    EXPECT_LT(check_consistency(product_measure(m, g), m), 1e-12);
}

TEST(Consistency, RandomModelsAreConsistent) {
    testing::Rng rng(21);
    for (int t = 0; t < 40; ++t) {
        const Graph g = build_graph(testing::random_connected_edges(rng, 2 + t % 5, 0.4));
        const auto m = testing::random_model(rng, g, 2 + t % 3, 1.5);
        EXPECT_LT(check_consistency(exact_gibbs(m, g), m), 1e-12);
    }
}

TEST(HMoment, Examples) {
    const Graph g = build_graph(testing::path_edges(3));
    EXPECT_NEAR(h_moment(exact_gibbs(ising(g, 0.3, {1.0, 1.0}), g), ising(g, 0.3, {1.0, 1.0})), 1.0, 1e-15);
    EXPECT_EQ(h_moment(exact_gibbs(ising(g, 0.3), g), ising(g, 0.3)), 0.0);
    const auto m = ising(g, 0.0, {0.0, 1.0});
    EXPECT_NEAR(h_moment(exact_gibbs(m, g), m), 0.5, 1e-15);
}

TEST(Covariance, ZeroCouplingGivesZero) {
    const Graph g = build_graph(testing::path_edges(4));
    const auto mu = exact_gibbs(ising(g, 0.0), g);
    EXPECT_NEAR(covariance(mu, spin_at(0), spin_at(3)), 0.0, 1e-15);
}

TEST(Covariance, ChainMatchesTransferMatrix) {
    for (double beta : {0.1, 0.4, 1.0}) {
        const std::size_t n = 6;
        const Graph g = build_graph(testing::path_edges(n));
        const auto mu = exact_gibbs(ising(g, beta), g);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double exact = covariance(mu, spin_at(i), spin_at(j));
                EXPECT_NEAR(exact, testing::ising_chain_covariance(beta, n, i, j), 1e-10);
                const double d = static_cast<double>(i > j ? i - j : j - i);
                EXPECT_NEAR(exact, std::pow(std::tanh(beta), d), 1e-10);
            }
        }
    }
}

TEST(Covariance, ConstantObservableGivesZero) {
    const Graph g = build_graph(testing::path_edges(3));
    const auto mu = exact_gibbs(ising(g, 0.7), g);
    EXPECT_NEAR(covariance(mu, Observable{0, {2.0, 2.0}}, spin_at(2)), 0.0, 1e-15);
}

TEST(ConditionalMeasure, FullRegionIsIdentity) {
    const Graph g = build_graph(testing::path_edges(4));
    const auto mu = exact_gibbs(ising(g, 0.5), g);
    const auto c = conditional_measure(mu, all_vertices(g), Configuration(4, 1));
    for (std::size_t i = 0; i < mu.weights.size(); ++i) EXPECT_NEAR(c.weights[i], mu.weights[i], 1e-15);
}

TEST(ConditionalMeasure, EmptyRegionIsPointMass) {
    const Graph g = build_graph(testing::path_edges(4));
    const auto mu = exact_gibbs(ising(g, 0.5), g);
    const Configuration x{1, 0, 0, 1};
    const auto c = conditional_measure(mu, {}, x);
    const std::size_t at = mu.space.encode(x);
    for (std::size_t i = 0; i < c.weights.size(); ++i) EXPECT_EQ(c.weights[i], i == at ? 1.0 : 0.0);
}

TEST(ConditionalMeasure, ZeroCouplingIgnoresOutsideValues) {
    const Graph g = build_graph(testing::path_edges(4));
    const FiniteSpinModel m(g, {"x", "y"}, {0.25, 0.75}, {});
    const auto mu = exact_gibbs(m, g);
    const VertexSet D{1, 2};
    for (std::size_t code = 0; code < 4; ++code) {
        Configuration x{static_cast<int>(code & 1), 0, 0, static_cast<int>(code >> 1)};
        const auto c = conditional_measure(mu, D, x);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                Configuration z = x;
                z[1] = a;
                z[2] = b;
                EXPECT_NEAR(c.weights[mu.space.encode(z)], m.ref_weights()[a] * m.ref_weights()[b], 1e-15);
            }
        }
    }
}

TEST(SiteMarginal, MatchesSymmetry) {
    const Graph g = build_graph(testing::path_edges(3));
    const auto p = site_marginal(exact_gibbs(ising(g, 0.9), g), 1);
    EXPECT_NEAR(p[0], 0.5, 1e-15);
    EXPECT_NEAR(p[1], 0.5, 1e-15);
}

// ---- decay experiment ----

struct Chain {
    Graph g = build_graph(testing::path_edges(6));
    FiniteSpinModel m;
    ColorPartition part;
    UniquenessCertificate cert;

    explicit Chain(double beta)
        : m(ising(g, beta, {1.0, 1.0})), part(greedy_color(g)) {
        ContractionParams p{estimate_kappa(m, g, 600.0), uniform_edge_weights(g, 0.1), 2, 2};
        cert = certify(p, g, 600.0, h_moment(exact_gibbs(m, g), m));
    }
};

TEST(Decay, WorkedChainAntipodalSites) {
    Chain c(0.1);
    ASSERT_EQ(c.cert.verdict, Verdict::Unique);
    const auto r = decay_experiment(c.m, c.part, c.cert, spin_at(0), spin_at(5));
    EXPECT_EQ(r.distance, 5u);
    EXPECT_NEAR(r.covariance, std::pow(std::tanh(0.1), 5), 1e-10);
    EXPECT_LT(std::fabs(r.covariance), r.bound);
    EXPECT_NEAR(r.bound, c.cert.C_K * std::exp(-c.cert.alpha_K * 5.0), 1e-15);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.conditionings, 2u);
}

TEST(Decay, ConstantObservableGivesZeroCovariance) {
    Chain c(0.1);
    const auto r = decay_experiment(c.m, c.part, c.cert, Observable{1, {3.0, 3.0}}, spin_at(4));
    EXPECT_NEAR(r.covariance, 0.0, 1e-15);
    EXPECT_TRUE(r.pass());
}

TEST(Decay, ZeroCouplingGivesZeroCovarianceAndPositiveBound) {
    Chain c(0.0);
    ASSERT_EQ(c.cert.verdict, Verdict::Unique);
    const auto r = decay_experiment(c.m, c.part, c.cert, spin_at(0), spin_at(3));
    EXPECT_NEAR(r.covariance, 0.0, 1e-15);
    EXPECT_GT(r.bound, 0.0);
    EXPECT_TRUE(r.pass());
}

TEST(Decay, RequiresUniqueCertificateAndDistinctSites) {
    Chain c(0.1);
    EXPECT_THROW(decay_experiment(c.m, c.part, c.cert, spin_at(2), spin_at(2)), ModelError);
    auto weak = c.cert;
    weak.verdict = Verdict::Indeterminate;
    EXPECT_THROW(decay_experiment(c.m, c.part, weak, spin_at(0), spin_at(5)), CriterionError);
}

}  // namespace
}  // namespace gibbscert
