#include <gtest/gtest.h>

#include <cmath>

#include "entigraph/curve_fit.hpp"
#include "entigraph/curve_io.hpp"

using namespace entigraph;

namespace {

std::vector<double> fit_grid(double x_max) {
    std::vector<double> xs;
    for (int x = 0; x <= 50; ++x) xs.push_back(x);
    for (double x = 55; x <= x_max; x *= 1.04) xs.push_back(std::round(x));
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

std::vector<FitPoint> planted(const MoEFit& model, const std::vector<double>& xs) {
    std::vector<FitPoint> pts;
    for (double x : xs) pts.push_back({x, eval_moe_fit(model, x)});
    return pts;
}

void expect_recovered(const MoEFit& truth, const MoEFit& fit) {
    ASSERT_EQ(fit.terms.size(), truth.terms.size());
    EXPECT_NEAR(fit.a, truth.a, 1e-4 * std::abs(truth.a));
    for (std::size_t i = 0; i < truth.terms.size(); ++i) {
        EXPECT_NEAR(fit.terms[i].b, truth.terms[i].b, 1e-4 * truth.terms[i].b) << i;
        EXPECT_NEAR(fit.terms[i].r, truth.terms[i].r, 1e-4 * truth.terms[i].r) << i;
    }
}

AccuracyCurve as_curve(const std::vector<std::uint64_t>& t, const std::vector<double>& y) {
    AccuracyCurve c;
    c.steps = t;
    c.mean_acc = y;
    c.stderr_acc.assign(t.size(), 0.0);
    return c;
}

}  // namespace

TEST(EvalMoeFit, PublishedCoefficientsAtZero) {
    MoEFit f;
    f.a = 64.5456;
    f.terms = {{13.8352, 0.9989}, {8.4705, 0.8961}, {3.932, 0.0546}};
    EXPECT_NEAR(eval_moe_fit(f, 0.0), 38.3079, 1e-4);
    EXPECT_NEAR(eval_moe_fit(f, 1e7), 64.5456, 1e-9);
}

TEST(EvalMoeFit, SingleTerm) {
    MoEFit f;
    f.a = 1.0;
    f.terms = {{1.0, 0.5}};
    EXPECT_DOUBLE_EQ(eval_moe_fit(f, 1.0), 0.5);
}

TEST(FitMoe, RecoversTwoTerms) {
    MoEFit truth;
    truth.a = 1.0;
    truth.terms = {{0.6, 0.99}, {0.3, 0.8}};
    FitOptions opt;
    opt.k_terms = 2;
    const auto fit = fit_moe(planted(truth, fit_grid(3000)), opt);
    expect_recovered(truth, fit);
    EXPECT_LT(fit.residual_sse, 1e-10);
}

TEST(FitMoe, RecoversThreeTerms) {
    MoEFit truth;
    truth.a = 0.9;
    truth.terms = {{0.5, 0.999}, {0.25, 0.97}, {0.1, 0.6}};
    const auto fit = fit_moe(planted(truth, fit_grid(30000)));
    expect_recovered(truth, fit);
    EXPECT_LT(fit.residual_sse, 1e-10);
}

TEST(FitMoe, ConstantData) {
    std::vector<FitPoint> pts;
    for (int i = 0; i < 30; ++i) pts.push_back({static_cast<double>(i * i), 5.0});
    const auto fit = fit_moe(pts);
    EXPECT_NEAR(fit.a, 5.0, 1e-9);
    for (const auto& t : fit.terms) EXPECT_NEAR(t.b, 0.0, 1e-9);
}

TEST(FitMoe, DeterministicPerSeed) {
    MoEFit truth;
    truth.a = 2.0;
    truth.terms = {{1.0, 0.95}, {0.5, 0.5}};
    auto pts = planted(truth, fit_grid(2000));
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i].y += 1e-3 * std::sin(7.0 * i);
    FitOptions opt;
    opt.seed = 9;
    const auto a = fit_moe(pts, opt);
    const auto b = fit_moe(pts, opt);
    EXPECT_EQ(a.a, b.a);
    EXPECT_EQ(a.residual_sse, b.residual_sse);
}

TEST(FitMoe, TermsSortedAndInRange) {
    MoEFit truth;
    truth.a = 1.0;
    truth.terms = {{0.3, 0.999}, {0.3, 0.99}, {0.3, 0.9}};
    const auto fit = fit_moe(planted(truth, fit_grid(20000)));
    for (std::size_t i = 0; i < fit.terms.size(); ++i) {
        EXPECT_GE(fit.terms[i].b, 0.0);
        EXPECT_GT(fit.terms[i].r, 0.0);
        EXPECT_LT(fit.terms[i].r, 1.0);
        if (i > 0) EXPECT_GE(fit.terms[i - 1].r, fit.terms[i].r);
    }
}

TEST(FitMoe, RejectsBadInput) {
    std::vector<FitPoint> few{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}};
    EXPECT_THROW(fit_moe(few), std::invalid_argument);
    std::vector<FitPoint> dup{{0, 1}, {1, 2}, {1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}};
    EXPECT_THROW(fit_moe(dup), std::invalid_argument);
    std::vector<FitPoint> nan{{0, 1}, {1, 2}, {2, std::nan("")}, {3, 4}, {4, 5}, {5, 6}, {6, 7}};
    EXPECT_THROW(fit_moe(nan), std::invalid_argument);
    FitOptions zero;
    zero.k_terms = 0;
    EXPECT_THROW(fit_moe(few, zero), std::invalid_argument);
}

TEST(ClassifyPhases, SaturatingCurve) {
    const auto t = log_grid(1'000'000, 40);
    std::vector<double> y;
    for (auto s : t) y.push_back(0.9 - 0.86 * std::exp(-static_cast<double>(s) / 5000.0));
    const auto ph = classify_phases(as_curve(t, y));
    EXPECT_GT(ph.t1, 0.0);
    EXPECT_LT(ph.t1, ph.t2);
    EXPECT_LT(ph.t1, 5000.0);
}

TEST(ClassifyPhases, Indeterminate) {
    const auto t = log_grid(1'000'000, 30);
    EXPECT_THROW(classify_phases(as_curve(t, std::vector<double>(t.size(), 0.4))), IndeterminateShape);
    std::vector<double> ramp;
    for (auto s : t) ramp.push_back(1e-6 * static_cast<double>(s));
    EXPECT_THROW(classify_phases(as_curve(t, ramp)), IndeterminateShape);
}

TEST(ClassifyPhases, NeedsEnoughData) {
    const std::vector<std::uint64_t> short_t{0, 1, 2, 3, 4};
    EXPECT_THROW(classify_phases(as_curve(short_t, std::vector<double>(5, 0.1))), std::invalid_argument);
    const auto narrow = linear_grid(500, 20);
    EXPECT_THROW(classify_phases(as_curve(narrow, std::vector<double>(narrow.size(), 0.1))),
                 std::invalid_argument);
}
