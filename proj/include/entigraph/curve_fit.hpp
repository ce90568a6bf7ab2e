#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "entigraph/process.hpp"

namespace entigraph {

/// y(x) = a - sum_i b_i r_i^x with b_i >= 0 and r_i in (0,1).
struct MoEFit {
    struct Term {
        double b = 0.0;
        double r = 0.5;
    };
    double a = 0.0;
    std::vector<Term> terms;  // sorted by r, slowest decay first
    double residual_sse = 0.0;
    std::uint64_t iterations = 0;
    /// Lowest SSE among the initial guesses, before any refinement.
    double best_start_sse = 0.0;
    std::uint64_t starts = 0;
};

double eval_moe_fit(const MoEFit& fit, double x);

struct FitPoint {
    double x = 0.0;
    double y = 0.0;
};

struct FitOptions {
    std::size_t k_terms = 3;
    std::uint64_t seed = 0;
    std::uint64_t max_iter = 2000;
    /// Relative step size at which a start counts as converged.
    double tol = 1e-10;
    std::size_t random_starts = 8;
};

class FitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Damped Gauss–Newton (Levenberg–Marquardt) least squares over
/// (a, sqrt(b_i), logit(r_i)), run from several starts; the best result wins.
/// Needs at least 2k+1 points with distinct x (std::invalid_argument). Throws
/// FitError when no start does at least as well as the constant model.
MoEFit fit_moe(std::span<const FitPoint> points, const FitOptions& options = {});

std::vector<FitPoint> curve_points(const AccuracyCurve& curve);

struct PhaseBoundaries {
    double t1 = 0.0;
    double t2 = 0.0;
};

struct PhaseOptions {
    double linear_r2 = 0.98;
    double plateau_fraction = 0.02;
};

class IndeterminateShape : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// t1: the last grid point t_i such that a straight line in t fitted to the
/// points with t <= t_i has R^2 >= 0.98 (at least three points).
/// t2: the first grid point within 2% of the final value.
/// Needs >= 10 points spanning >= 3 decades of positive t
/// (std::invalid_argument); throws IndeterminateShape unless 0 < t1 < t2.
PhaseBoundaries classify_phases(const AccuracyCurve& curve, const PhaseOptions& options = {});

}  // namespace entigraph
