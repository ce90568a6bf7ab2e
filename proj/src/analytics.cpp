#include "entigraph/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "entigraph/rng.hpp"

namespace entigraph {

double extinction_probability(double lambda, double tol) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive and finite");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (lambda <= 1.0) return 1.0;

    constexpr std::uint64_t kMaxIterations = 200'000'000;
    double rho = 0.0;
    for (std::uint64_t i = 0; i < kMaxIterations; ++i) {
        const double next = std::exp(lambda * (rho - 1.0));
        if (std::abs(next - std::exp(lambda * (next - 1.0))) < tol) return next;
        rho = next;
    }
    throw std::runtime_error("extinction fixed-point iteration did not converge");
}

double c_lambda(double lambda) {
    const double survive = 1.0 - extinction_probability(lambda);
    return survive * survive;
}

TheoremBounds TheoremBounds::make(const ModelParams& params) {
    params.validate();
    if (!(params.lambda > 1.0)) throw std::domain_error("link-density bounds need lambda > 1 (log lambda > 0)");
    const double v = params.vertex_count;
    const double pairs = v * (v - 1.0);
    if (pairs <= 0.0) throw std::domain_error("link-density bounds need at least two vertices");
    TheoremBounds b;
    b.params = params;
    b.epsilon = params.epsilon;
    b.c_lambda = entigraph::c_lambda(params.lambda);
    b.c_lb = 1.0 - 1.0 / pairs;
    b.c_ub = 1.0 - (1.0 + params.epsilon) * std::log(v) / (pairs * std::log(params.lambda));
    if (!(b.c_ub > 0.0 && b.c_ub < 1.0) || !(b.c_lb > 0.0 && b.c_lb < 1.0))
        throw std::domain_error("C_LB and C_UB must lie in (0,1); graph too small for these parameters");
    return b;
}

std::pair<double, double> TheoremBounds::band(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("t must be nonnegative");
    const double p = params.edge_probability;
    const double lower = (p + c_lambda * (1.0 - std::pow(c_lb, t))) * (1.0 - epsilon);
    const double upper = (p + c_lambda * (1.0 - std::pow(c_ub, t))) * (1.0 + epsilon);
    return {lower, upper};
}

std::pair<double, double> theorem_band(const ModelParams& params, double t) {
    return TheoremBounds::make(params).band(t);
}

double moe_value(double p, double c, std::span<const double> mass, std::span<const double> rates, double t) {
    if (mass.size() != rates.size()) throw std::invalid_argument("mass and rates differ in length");
    if (!(t >= 0.0)) throw std::invalid_argument("t must be nonnegative");
    double total = 0.0;
    for (double m : mass) {
        if (!(m >= 0.0)) throw std::invalid_argument("mass function has a negative entry");
        total += m;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("mass function must sum to 1");
    double decay = 0.0;
    for (std::size_t k = 0; k < mass.size(); ++k) {
        const double a = rates[k];
        if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("rates must lie in (0, 1]");
        if (mass[k] == 0.0) continue;
        const double survive = a == 1.0 ? (t == 0.0 ? 1.0 : 0.0) : std::exp(t * std::log1p(-a));
        decay += mass[k] * survive;
    }
    return p + c * (1.0 - decay);
}

double BranchingApprox::value(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("t must be nonnegative");
    auto survive = [&](std::size_t k) {
        const double a = std::min(1.0, rate(k));
        return a == 1.0 ? (t == 0.0 ? 1.0 : 0.0) : std::exp(t * std::log1p(-a));
    };
    double decay = residual_weight * survive(1);
    for (std::size_t l = 0; l < level_weights.size(); ++l) {
        double level = 0.0;
        const auto& pmf = offspring_pmfs[l];
        for (std::size_t k = 1; k < pmf.size(); ++k)
            if (pmf[k] > 0.0) level += pmf[k] * survive(k);
        decay += level_weights[l] * level;
    }
    return params.edge_probability + c * (1.0 - decay);
}

namespace {

constexpr std::uint64_t kMaxTreeNodes = 50'000'000;

// Adds, for every node at depth d of one depth-L tree, its k to
// tallies[L - d][k].
void sample_tree(double lambda, std::uint32_t depth, OffspringCount count, Rng& rng,
                 std::vector<std::vector<std::uint64_t>>& tallies) {
    std::poisson_distribution<std::uint64_t> offspring(lambda);
    // children[d][i]: number of children of the i-th node at depth d.
    std::vector<std::vector<std::uint64_t>> children(depth + 1);
    std::uint64_t width = 1;
    std::uint64_t total = 1;
    for (std::uint32_t d = 0; d <= depth; ++d) {
        auto& row = children[d];
        row.resize(width, 0);
        if (d == depth) break;
        std::uint64_t next = 0;
        for (auto& c : row) {
            c = offspring(rng);
            next += c;
        }
        total += next;
        if (total > kMaxTreeNodes) throw std::length_error("Galton-Watson tree too large; lower depth or lambda");
        width = next;
    }

    std::vector<std::uint64_t> below;  // subtree sizes at depth d + 1
    for (std::uint32_t d = depth + 1; d-- > 0;) {
        const auto& row = children[d];
        std::vector<std::uint64_t> sizes(row.size(), 1);
        std::size_t child = 0;
        for (std::size_t i = 0; i < row.size(); ++i) {
            for (std::uint64_t c = 0; c < row[i]; ++c) sizes[i] += below[child++];
            const std::uint64_t k = count == OffspringCount::SubtreeSize ? sizes[i] : 1 + row[i];
            auto& tally = tallies[depth - d];
            if (tally.size() <= k) tally.resize(k + 1, 0);
            ++tally[k];
        }
        below = std::move(sizes);
    }
}

}  // namespace

BranchingApprox branching_approx(const ModelParams& params, std::uint32_t depth, std::uint64_t mc_trees,
                                 std::uint64_t seed, OffspringCount count) {
    params.validate();
    if (!(params.lambda > 1.0)) throw std::domain_error("branching approximation needs lambda > 1");
    if (params.vertex_count < 2) throw std::invalid_argument("branching approximation needs at least two vertices");
    if (mc_trees == 0) throw std::invalid_argument("mc_trees must be at least 1");

    const double lambda = params.lambda;
    std::vector<std::vector<std::uint64_t>> tallies(depth + 1);
    for (std::uint64_t r = 0; r < mc_trees; ++r) {
        Rng rng = substream_rng(seed, r);
        sample_tree(lambda, depth, count, rng, tallies);
    }

    BranchingApprox approx;
    approx.params = params;
    approx.c = c_lambda(lambda);
    approx.depth = depth;
    approx.unit_rate = 1.0 / (static_cast<double>(params.vertex_count) * (params.vertex_count - 1.0));
    approx.residual_weight = std::pow(lambda, -static_cast<double>(depth) - 1.0);
    approx.level_weights.resize(depth + 1);
    approx.offspring_pmfs.resize(depth + 1);
    for (std::uint32_t l = 0; l <= depth; ++l) {
        approx.level_weights[l] = (lambda - 1.0) / std::pow(lambda, static_cast<double>(l) + 1.0);
        const auto& tally = tallies[l];
        std::uint64_t nodes = 0;
        for (auto n : tally) nodes += n;
        auto& pmf = approx.offspring_pmfs[l];
        if (nodes == 0) {
            // every simulated tree died before depth L - l
            pmf = {0.0, 1.0};
            continue;
        }
        pmf.assign(tally.size(), 0.0);
        for (std::size_t k = 1; k < tally.size(); ++k)
            pmf[k] = static_cast<double>(tally[k]) / static_cast<double>(nodes);
    }
    return approx;
}

AccuracyCurve branching_approx_curve(const ModelParams& params, std::uint32_t depth, std::uint64_t mc_trees,
                                     std::span<const std::uint64_t> step_grid, std::uint64_t seed,
                                     OffspringCount count) {
    if (step_grid.empty() || !std::is_sorted(step_grid.begin(), step_grid.end()))
        throw std::invalid_argument("step grid must be nonempty and ascending");
    const auto approx = branching_approx(params, depth, mc_trees, seed, count);
    AccuracyCurve curve;
    curve.steps.assign(step_grid.begin(), step_grid.end());
    curve.replicates = mc_trees;
    curve.stderr_acc.assign(step_grid.size(), 0.0);
    for (std::uint64_t t : step_grid) curve.mean_acc.push_back(approx.value(static_cast<double>(t)));
    return curve;
}

std::uint32_t natural_tree_depth(const ModelParams& params) {
    params.validate();
    if (!(params.lambda > 1.0)) throw std::domain_error("tree depth needs lambda > 1");
    const double giant = (1.0 - extinction_probability(params.lambda)) * params.vertex_count;
    const double depth = std::log(std::max(giant, 1.0)) / std::log(params.lambda);
    return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::lround(depth)));
}

}  // namespace entigraph
