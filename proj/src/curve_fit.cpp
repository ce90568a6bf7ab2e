#include "entigraph/curve_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include <Eigen/Dense>

#include "entigraph/rng.hpp"

namespace entigraph {

double eval_moe_fit(const MoEFit& fit, double x) {
    double y = fit.a;
    for (const auto& term : fit.terms) y -= term.b * std::pow(term.r, x);
    return y;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// log(sigmoid(theta)), accurate when r is within 1e-12 of 1.
double log_sigmoid(double theta) {
    return theta >= 0 ? -std::log1p(std::exp(-theta)) : theta - std::log1p(std::exp(theta));
}

double sigmoid(double theta) {
    return theta >= 0 ? 1.0 / (1.0 + std::exp(-theta)) : std::exp(theta) / (1.0 + std::exp(theta));
}

double logit(double r) { return std::log(r) - std::log1p(-r); }

// Parameter layout: [a, beta_1..beta_k, theta_1..theta_k], b = beta^2,
// r = sigmoid(theta).
class MoEProblem {
  public:
    MoEProblem(std::span<const FitPoint> points, std::size_t k) : k_(k), x_(points.size()), y_(points.size()) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            x_[j] = points[j].x;
            y_[j] = points[j].y;
        }
    }

    std::size_t params() const { return 1 + 2 * k_; }
    std::size_t k() const { return k_; }
    const VectorXd& x() const { return x_; }
    const VectorXd& y() const { return y_; }

    VectorXd residuals(const VectorXd& p) const {
        VectorXd res = y_.array() - p[0];
        for (std::size_t i = 0; i < k_; ++i) {
            const double b = p[1 + i] * p[1 + i];
            const double log_r = log_sigmoid(p[1 + k_ + i]);
            res.array() += b * (x_.array() * log_r).exp();
        }
        return res;
    }

    // Jacobian of the model (not of the residual).
    MatrixXd jacobian(const VectorXd& p) const {
        const auto n = x_.size();
        MatrixXd jac(n, static_cast<Eigen::Index>(params()));
        jac.col(0).setOnes();
        for (std::size_t i = 0; i < k_; ++i) {
            const double beta = p[1 + i];
            const double theta = p[1 + k_ + i];
            const VectorXd pow_x = (x_.array() * log_sigmoid(theta)).exp();
            jac.col(static_cast<Eigen::Index>(1 + i)) = -2.0 * beta * pow_x;
            jac.col(static_cast<Eigen::Index>(1 + k_ + i)) =
                -(beta * beta) * (1.0 - sigmoid(theta)) * (pow_x.array() * x_.array()).matrix();
        }
        return jac;
    }

    double sse(const VectorXd& p) const {
        const double s = residuals(p).squaredNorm();
        return std::isfinite(s) ? s : std::numeric_limits<double>::infinity();
    }

  private:
    std::size_t k_;
    VectorXd x_;
    VectorXd y_;
};

struct Refined {
    VectorXd params;
    double sse = std::numeric_limits<double>::infinity();
    std::uint64_t iterations = 0;
};

Refined levenberg_marquardt(const MoEProblem& problem, VectorXd p, const FitOptions& options) {
    const auto np = static_cast<Eigen::Index>(problem.params());
    const auto n = problem.x().size();
    const double floor = 1e-30 * std::max(1.0, problem.y().squaredNorm());

    Refined out;
    VectorXd res = problem.residuals(p);
    double sse = res.squaredNorm();
    double mu = 1e-3;
    std::uint64_t iter = 0;
    for (; iter < options.max_iter && sse > floor; ++iter) {
        const MatrixXd jac = problem.jacobian(p);
        VectorXd scale = jac.colwise().norm();
        for (Eigen::Index c = 0; c < np; ++c) scale[c] = std::max(scale[c], 1e-12);

        bool accepted = false;
        VectorXd delta;
        while (mu < 1e20) {
            // min ||J d - res||^2 + mu ||diag(scale) d||^2 via QR on the stacked system
            MatrixXd a(n + np, np);
            a.topRows(n) = jac;
            a.bottomRows(np) = (std::sqrt(mu) * scale).asDiagonal();
            VectorXd rhs = VectorXd::Zero(n + np);
            rhs.head(n) = res;
            delta = a.colPivHouseholderQr().solve(rhs);
            const VectorXd trial = p + delta;
            const VectorXd trial_res = problem.residuals(trial);
            const double trial_sse = trial_res.squaredNorm();
            if (std::isfinite(trial_sse) && trial_sse < sse) {
                p = trial;
                res = trial_res;
                sse = trial_sse;
                mu = std::max(mu / 3.0, 1e-15);
                accepted = true;
                break;
            }
            mu *= 4.0;
        }
        if (!accepted) break;
        if (delta.norm() <= options.tol * (p.norm() + options.tol)) {
            ++iter;
            break;
        }
    }
    out.params = std::move(p);
    out.sse = sse;
    out.iterations = iter;
    return out;
}

// Linear least squares for (a, b) with rates fixed, b clamped to a small
// positive value so every term keeps a gradient.
VectorXd initial_params(const MoEProblem& problem, const std::vector<double>& rates) {
    const auto n = problem.x().size();
    const std::size_t k = problem.k();
    MatrixXd design(n, static_cast<Eigen::Index>(1 + k));
    design.col(0).setOnes();
    for (std::size_t i = 0; i < k; ++i)
        design.col(static_cast<Eigen::Index>(1 + i)) = -(problem.x().array() * std::log(rates[i])).exp();
    const VectorXd coef = design.colPivHouseholderQr().solve(problem.y());

    const double scale = std::max(1e-300, problem.y().cwiseAbs().maxCoeff());
    VectorXd p(static_cast<Eigen::Index>(problem.params()));
    p[0] = std::isfinite(coef[0]) ? coef[0] : problem.y().mean();
    for (std::size_t i = 0; i < k; ++i) {
        double b = coef[static_cast<Eigen::Index>(1 + i)];
        if (!std::isfinite(b) || b < 1e-6 * scale) b = 1e-6 * scale;
        p[static_cast<Eigen::Index>(1 + i)] = std::sqrt(b);
        p[static_cast<Eigen::Index>(1 + k + i)] = logit(rates[i]);
    }
    return p;
}

double rate_from_timescale(double tau) {
    const double r = std::exp(-1.0 / tau);
    return std::clamp(r, 1e-12, 1.0 - 1e-15);
}

std::vector<std::vector<double>> start_rates(std::span<const FitPoint> points, const FitOptions& options) {
    const std::size_t k = options.k_terms;
    std::vector<std::vector<double>> starts;

    // Magnitudes seen when fitting token-count scaling curves, slowest first.
    const std::vector<double> anchors{0.999, 0.9, 0.05};
    std::vector<double> base;
    for (std::size_t i = 0; i < k; ++i) {
        if (i < anchors.size()) {
            base.push_back(anchors[i]);
        } else {
            base.push_back(std::pow(base.back(), 3.0));
        }
    }
    for (double stretch : {1.0, 0.5, 2.0}) {
        std::vector<double> rates;
        for (double r : base) rates.push_back(rate_from_timescale(-stretch / std::log(r)));
        starts.push_back(std::move(rates));
    }

    // Time scales spread over the x range of the data.
    double x_max = 0.0;
    double x_min = std::numeric_limits<double>::infinity();
    std::vector<double> xs;
    for (const auto& pt : points) xs.push_back(pt.x);
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i) x_min = std::min(x_min, xs[i] - xs[i - 1]);
    x_max = std::max(xs.back() - xs.front(), 1e-12);
    x_min = std::clamp(x_min, 1e-12, x_max);
    for (double shift : {0.5, 0.25, 0.75}) {
        std::vector<double> rates;
        for (std::size_t i = 0; i < k; ++i) {
            const double frac = (static_cast<double>(k - 1 - i) + shift) / static_cast<double>(k);
            rates.push_back(rate_from_timescale(x_min * std::pow(x_max / x_min, frac)));
        }
        starts.push_back(std::move(rates));
    }

    for (std::size_t s = 0; s < options.random_starts; ++s) {
        Rng rng = substream_rng(options.seed, s);
        std::uniform_real_distribution<double> u(std::log(x_min / 3.0), std::log(3.0 * x_max));
        std::vector<double> rates;
        for (std::size_t i = 0; i < k; ++i) rates.push_back(rate_from_timescale(std::exp(u(rng))));
        std::sort(rates.rbegin(), rates.rend());
        starts.push_back(std::move(rates));
    }
    return starts;
}

MoEFit to_fit(const MoEProblem& problem, const Refined& refined) {
    MoEFit fit;
    const std::size_t k = problem.k();
    fit.a = refined.params[0];
    for (std::size_t i = 0; i < k; ++i) {
        const double beta = refined.params[static_cast<Eigen::Index>(1 + i)];
        const double theta = refined.params[static_cast<Eigen::Index>(1 + k + i)];
        fit.terms.push_back({beta * beta, std::clamp(sigmoid(theta), std::numeric_limits<double>::min(),
                                                     std::nextafter(1.0, 0.0))});
    }
    std::sort(fit.terms.begin(), fit.terms.end(), [](const auto& l, const auto& r) { return l.r > r.r; });
    fit.residual_sse = refined.sse;
    fit.iterations = refined.iterations;
    return fit;
}

}  // namespace

MoEFit fit_moe(std::span<const FitPoint> points, const FitOptions& options) {
    if (options.k_terms == 0) throw std::invalid_argument("k_terms must be at least 1");
    if (points.size() < 2 * options.k_terms + 1)
        throw std::invalid_argument("need at least 2k+1 points to fit k terms");
    std::vector<double> xs;
    for (const auto& pt : points) {
        if (!std::isfinite(pt.x) || !std::isfinite(pt.y)) throw std::invalid_argument("points must be finite");
        xs.push_back(pt.x);
    }
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) throw std::invalid_argument("x values must be distinct");

    const MoEProblem problem(points, options.k_terms);
    const double mean = problem.y().mean();
    const double baseline = (problem.y().array() - mean).square().sum();

    Refined best;
    double best_start = std::numeric_limits<double>::infinity();
    std::uint64_t starts = 0;
    for (const auto& rates : start_rates(points, options)) {
        const VectorXd init = initial_params(problem, rates);
        const double init_sse = problem.sse(init);
        if (!std::isfinite(init_sse)) continue;
        ++starts;
        best_start = std::min(best_start, init_sse);
        Refined refined = levenberg_marquardt(problem, init, options);
        if (refined.sse < best.sse) best = std::move(refined);
    }
    const double slack = 1e-9 * baseline + 1e-24 * std::max(1.0, problem.y().squaredNorm());
    if (!std::isfinite(best.sse) || best.sse > baseline + slack)
        throw FitError("no start improved on the constant model (baseline SSE " + std::to_string(baseline) + ")");

    MoEFit fit = to_fit(problem, best);
    fit.best_start_sse = best_start;
    fit.starts = starts;
    return fit;
}

std::vector<FitPoint> curve_points(const AccuracyCurve& curve) {
    std::vector<FitPoint> points;
    points.reserve(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i)
        points.push_back({static_cast<double>(curve.steps[i]), curve.mean_acc[i]});
    return points;
}

namespace {

double prefix_r2(std::span<const std::uint64_t> t, std::span<const double> y, std::size_t count) {
    double mt = 0.0, my = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        mt += static_cast<double>(t[i]);
        my += y[i];
    }
    mt /= static_cast<double>(count);
    my /= static_cast<double>(count);
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double dt = static_cast<double>(t[i]) - mt;
        const double dy = y[i] - my;
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    if (stt <= 0.0 || syy <= 0.0) return 0.0;
    return (sty * sty) / (stt * syy);
}

}  // namespace

PhaseBoundaries classify_phases(const AccuracyCurve& curve, const PhaseOptions& options) {
    const std::size_t n = curve.size();
    if (n < 10 || curve.mean_acc.size() != n) throw std::invalid_argument("phase classification needs >= 10 points");
    if (!std::is_sorted(curve.steps.begin(), curve.steps.end()))
        throw std::invalid_argument("curve steps must be ascending");
    const auto first_pos = std::find_if(curve.steps.begin(), curve.steps.end(), [](auto t) { return t > 0; });
    if (first_pos == curve.steps.end() ||
        static_cast<double>(curve.steps.back()) < 1000.0 * static_cast<double>(*first_pos))
        throw std::invalid_argument("phase classification needs >= 3 decades of t");

    // Extend the linear prefix until its fit first drops below the threshold.
    std::optional<std::size_t> linear_end;
    for (std::size_t count = 3; count <= n; ++count) {
        if (prefix_r2(curve.steps, curve.mean_acc, count) < options.linear_r2) break;
        linear_end = count - 1;
    }

    const double final_value = curve.mean_acc.back();
    std::optional<std::size_t> plateau_start;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(curve.mean_acc[i] - final_value) <= options.plateau_fraction * std::abs(final_value)) {
            plateau_start = i;
            break;
        }

    if (!linear_end) throw IndeterminateShape("no initial linear regime");
    if (!plateau_start) throw IndeterminateShape("no plateau");
    const double t1 = static_cast<double>(curve.steps[*linear_end]);
    const double t2 = static_cast<double>(curve.steps[*plateau_start]);
    if (!(t1 > 0.0) || !(t1 < t2))
        throw IndeterminateShape("linear regime does not end before the plateau (t1=" + std::to_string(t1) +
                                 ", t2=" + std::to_string(t2) + ")");
    return {t1, t2};
}

}  // namespace entigraph
