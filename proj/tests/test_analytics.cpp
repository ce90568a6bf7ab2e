#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "entigraph/analytics.hpp"
#include "entigraph/curve_io.hpp"
#include "oracles.hpp"

using namespace entigraph;

TEST(Extinction, SubcriticalAndCriticalAreOne) {
    EXPECT_EQ(extinction_probability(1.0), 1.0);
    EXPECT_EQ(extinction_probability(0.5), 1.0);
    EXPECT_EQ(extinction_probability(1e-3), 1.0);
}

TEST(Extinction, FixedPointAndBisection) {
    for (double lam : {1.05, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0}) {
        const double rho = extinction_probability(lam);
        EXPECT_LT(std::abs(rho - std::exp(lam * (rho - 1))), 1e-12) << lam;
        EXPECT_NEAR(rho, oracle::bisect_rho(lam), 1e-10) << lam;
    }
    EXPECT_NEAR(extinction_probability(2.0), 0.2032, 5e-5);
    EXPECT_LT(extinction_probability(50.0), 1e-20);
}

TEST(Extinction, RejectsBadInput) {
    EXPECT_THROW(extinction_probability(0.0), std::invalid_argument);
    EXPECT_THROW(extinction_probability(-1.0), std::invalid_argument);
    EXPECT_THROW(extinction_probability(2.0, 0.0), std::invalid_argument);
    EXPECT_THROW(extinction_probability(std::nan("")), std::invalid_argument);
}

TEST(CLambda, Values) {
    EXPECT_EQ(c_lambda(1.0), 0.0);
    EXPECT_NEAR(c_lambda(2.0), 0.635, 5e-4);
    double prev = 0.0;
    for (double lam = 1.5; lam < 30; lam += 0.5) {
        const double c = c_lambda(lam);
        EXPECT_GT(c, prev);
        EXPECT_LT(c, 1.0);
        prev = c;
    }
}

TEST(TheoremBand, Endpoints) {
    const auto m = ModelParams::from_lambda(100, 3.0, 0.1);
    const auto [lo0, hi0] = theorem_band(m, 0.0);
    EXPECT_DOUBLE_EQ(lo0, 0.03 * 0.9);
    EXPECT_DOUBLE_EQ(hi0, 0.03 * 1.1);
    const auto [lo, hi] = theorem_band(m, 1e12);
    const double c = c_lambda(3.0);
    EXPECT_NEAR(lo, (0.03 + c) * 0.9, 1e-12);
    EXPECT_NEAR(hi, (0.03 + c) * 1.1, 1e-12);
}

TEST(TheoremBand, MatchesIndependentFormula) {
    for (double t : {1.0, 10.0, 1000.0, 1e5, 3e6}) {
        const auto [lo, hi] = theorem_band(ModelParams::from_lambda(100, 3.0, 0.1), t);
        const auto ref = oracle::band(100, 3.0, 0.1, t);
        EXPECT_NEAR(lo, ref.lower, 1e-12) << t;
        EXPECT_NEAR(hi, ref.upper, 1e-12) << t;
    }
}

TEST(TheoremBand, OrderedAndMonotone) {
    const auto b = TheoremBounds::make(ModelParams::from_lambda(500, 3.0, 0.1));
    auto prev = b.band(0);
    for (std::uint64_t t : log_grid(10'000'000, 60)) {
        const auto cur = b.band(static_cast<double>(t));
        EXPECT_LE(cur.first, cur.second);
        EXPECT_GE(cur.first, prev.first);
        EXPECT_GE(cur.second, prev.second);
        prev = cur;
    }
}

TEST(TheoremBand, Errors) {
    EXPECT_THROW(theorem_band(ModelParams::from_lambda(100, 1.0), 1.0), std::domain_error);
    EXPECT_THROW(theorem_band(ModelParams::from_lambda(100, 0.5), 1.0), std::domain_error);
    // log V / log lambda too large for V(V-1): C_UB <= 0
    EXPECT_THROW(theorem_band(ModelParams::from_lambda(2, 1.01), 1.0), std::domain_error);
    EXPECT_THROW(theorem_band(ModelParams::from_lambda(100, 3.0), -1.0), std::invalid_argument);
}

TEST(MoeValue, Examples) {
    const std::vector<double> mass{1.0};
    const std::vector<double> rates{0.5};
    EXPECT_DOUBLE_EQ(moe_value(0.1, 0.5, mass, rates, 2.0), 0.475);
    EXPECT_DOUBLE_EQ(moe_value(0.1, 0.5, mass, rates, 0.0), 0.1);
    EXPECT_NEAR(moe_value(0.1, 0.5, mass, rates, 1e6), 0.6, 1e-15);
}

TEST(MoeValue, Validation) {
    const std::vector<double> bad_mass{0.3, 0.3};
    const std::vector<double> rates{0.1, 0.2};
    EXPECT_THROW(moe_value(0, 1, bad_mass, rates, 1), std::invalid_argument);
    const std::vector<double> mass{0.5, 0.5};
    const std::vector<double> bad_rates{0.0, 0.2};
    EXPECT_THROW(moe_value(0, 1, mass, bad_rates, 1), std::invalid_argument);
    const std::vector<double> short_rates{0.2};
    EXPECT_THROW(moe_value(0, 1, mass, short_rates, 1), std::invalid_argument);
}

TEST(BranchingApprox, WeightsAndPmfsAreNormalized) {
    const auto m = ModelParams::from_lambda(100, 3.0);
    const auto ba = branching_approx(m, 4, 2000, 5);
    ASSERT_EQ(ba.level_weights.size(), 5u);
    const double total = std::accumulate(ba.level_weights.begin(), ba.level_weights.end(), ba.residual_weight);
    EXPECT_NEAR(total, 1.0, 1e-14);
    for (std::size_t l = 0; l < ba.level_weights.size(); ++l)
        EXPECT_NEAR(ba.level_weights[l], 2.0 / std::pow(3.0, l + 1.0), 1e-15);
    for (const auto& pmf : ba.offspring_pmfs) {
        EXPECT_EQ(pmf[0], 0.0);
        EXPECT_NEAR(std::accumulate(pmf.begin(), pmf.end(), 0.0), 1.0, 1e-12);
    }
    EXPECT_DOUBLE_EQ(ba.offspring_pmfs[0][1], 1.0);
    EXPECT_DOUBLE_EQ(ba.unit_rate, 1.0 / 9900.0);
}

TEST(BranchingApprox, LevelOneSubtreeSizeIsShiftedPoisson) {
    // A node one level above the leaves has 1 + Poisson(lambda) nodes below it.
    const auto ba = branching_approx(ModelParams::from_lambda(100, 3.0), 3, 3000, 8);
    const auto& pmf = ba.offspring_pmfs[1];
    double poisson = std::exp(-3.0);
    for (std::size_t k = 1; k < 8; ++k) {
        const double got = k < pmf.size() ? pmf[k] : 0.0;
        EXPECT_NEAR(got, poisson, 0.02) << "k=" << k;
        poisson *= 3.0 / static_cast<double>(k);
    }
}

TEST(BranchingApprox, DirectChildrenCountsOnlyOneGeneration) {
    const auto ba = branching_approx(ModelParams::from_lambda(100, 2.0), 4, 2000, 3, OffspringCount::DirectChildren);
    for (std::size_t l = 1; l < ba.offspring_pmfs.size(); ++l) {
        double mean = 0.0;
        for (std::size_t k = 1; k < ba.offspring_pmfs[l].size(); ++k) mean += k * ba.offspring_pmfs[l][k];
        EXPECT_NEAR(mean, 3.0, 0.15) << "level " << l;
    }
}

TEST(BranchingApprox, EndpointsAndDeterminism) {
    const auto m = ModelParams::from_lambda(100, 3.0);
    const std::vector<std::uint64_t> grid{0, 1000, 1'000'000'000'000ULL};
    const auto a = branching_approx_curve(m, 4, 500, grid, 2);
    const auto b = branching_approx_curve(m, 4, 500, grid, 2);
    EXPECT_EQ(a.mean_acc, b.mean_acc);
    EXPECT_NEAR(a.mean_acc[0], 0.03, 1e-9);
    EXPECT_NEAR(a.mean_acc[2], 0.03 + c_lambda(3.0), 1e-6);
    EXPECT_GT(a.mean_acc[1], a.mean_acc[0]);
    EXPECT_LT(a.mean_acc[1], a.mean_acc[2]);
}

TEST(BranchingApprox, RejectsBadInput) {
    EXPECT_THROW(branching_approx(ModelParams::from_lambda(100, 1.0), 3, 10, 0), std::domain_error);
    EXPECT_THROW(branching_approx(ModelParams::from_lambda(100, 3.0), 3, 0, 0), std::invalid_argument);
}

TEST(NaturalTreeDepth, Formula) {
    const auto m = ModelParams::from_lambda(100, 3.0);
    const double expected = std::round(std::log((1 - extinction_probability(3.0)) * 100) / std::log(3.0));
    EXPECT_EQ(natural_tree_depth(m), static_cast<std::uint32_t>(expected));
    EXPECT_GE(natural_tree_depth(ModelParams::from_lambda(3, 1.1)), 1u);
}
