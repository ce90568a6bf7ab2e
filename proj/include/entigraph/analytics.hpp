#pragma once

// Closed-form theory of the augmentation process on Erdős–Rényi source graphs.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "entigraph/graph.hpp"
#include "entigraph/process.hpp"

namespace entigraph {

inline constexpr double kDefaultFixedPointTol = 1e-12;

/// Extinction probability of a Poisson(lambda) branching process: the
/// smallest root in [0,1] of rho = exp(lambda (rho - 1)), found by the
/// monotone iteration rho_{n+1} = exp(lambda (rho_n - 1)) from rho_0 = 0.
/// Returns exactly 1 for lambda <= 1. Stops once the residual is below tol.
double extinction_probability(double lambda, double tol = kDefaultFixedPointTol);

/// (1 - rho(lambda))^2, the limiting fraction of reachable ordered pairs.
double c_lambda(double lambda);

struct TheoremBounds {
    double c_lambda = 0.0;
    double c_lb = 0.0;  // 1 - 1/(V(V-1))
    double c_ub = 0.0;  // 1 - (1+eps) log V / (V(V-1) log lambda)
    double epsilon = 0.0;
    ModelParams params;

    static TheoremBounds make(const ModelParams& params);
    std::pair<double, double> band(double t) const;
};

/// Lower and upper link-density bounds at step t:
///   ((p + C (1 - C_LB^t)) (1 - eps),  (p + C (1 - C_UB^t)) (1 + eps)).
/// Throws std::domain_error for lambda <= 1 or when C_UB falls outside (0,1).
std::pair<double, double> theorem_band(const ModelParams& params, double t);

/// p + c (1 - sum_k mass[k] (1 - rates[k])^t). mass must sum to 1 (1e-9) and
/// every rate must lie in (0,1]; otherwise std::invalid_argument.
double moe_value(double p, double c, std::span<const double> mass, std::span<const double> rates, double t);

/// What a node at depth L - l of a simulated Galton–Watson tree contributes
/// as its k: the size of its subtree including itself, or one plus its number
/// of direct children.
enum class OffspringCount { SubtreeSize, DirectChildren };

struct BranchingApprox {
    ModelParams params;
    double c = 0.0;
    std::uint32_t depth = 0;
    /// (lambda-1)/lambda^(l+1) for l = 0..L.
    std::vector<double> level_weights;
    /// lambda^-(L+1), folded onto the k = 1 atom.
    double residual_weight = 0.0;
    /// offspring_pmfs[l][k] = estimated P(k), index 0 unused.
    std::vector<std::vector<double>> offspring_pmfs;
    /// 1 / (V(V-1)); the rate of the atom at k is k times this.
    double unit_rate = 0.0;

    double rate(std::size_t k) const { return static_cast<double>(k) * unit_rate; }
    double value(double t) const;
};

/// Estimates p_l(k) from mc_trees depth-L Poisson(lambda) trees (tree r uses
/// substream_rng(seed, r)). Deterministic per seed.
BranchingApprox branching_approx(const ModelParams& params, std::uint32_t depth, std::uint64_t mc_trees,
                                 std::uint64_t seed, OffspringCount count = OffspringCount::SubtreeSize);

AccuracyCurve branching_approx_curve(const ModelParams& params, std::uint32_t depth, std::uint64_t mc_trees,
                                     std::span<const std::uint64_t> step_grid, std::uint64_t seed,
                                     OffspringCount count = OffspringCount::SubtreeSize);

/// Depth at which a Poisson(lambda) tree holds about (1-rho) V vertices:
/// round(log((1-rho) V) / log lambda), at least 1.
std::uint32_t natural_tree_depth(const ModelParams& params);

}  // namespace entigraph
