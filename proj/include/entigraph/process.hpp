#pragma once

// The iterative augmentation process on a fixed source graph M_0.
//
// Each step samples an ordered pair (x, y), x != y, uniformly; if the source
// graph has a shortest path x, z1, ..., zk, y then the star edges
// (x, z1), ..., (x, zk), (x, y) join the learned relation set. Paths are always
// taken in the source graph, never in the augmented one.
//
// Link density Acc(t) = E[|D_t| | M_0] / (V(V-1)). It is estimated by Monte
// Carlo (estimate_acc_curve) or evaluated exactly from per-pair inclusion
// probabilities q_ij (exact_acc_curve): P[(i,j) in D_t] = 1 - (1 - q_ij)^t.
// The exact route depends on the deterministic BFS tie-break in graph.hpp;
// both routes share it.

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "entigraph/graph.hpp"
#include "entigraph/rng.hpp"

namespace entigraph {

class AugmentationState {
  public:
    /// D_0 = edges of the source graph, step 0.
    explicit AugmentationState(std::shared_ptr<const ShortestPathTable> paths);
    explicit AugmentationState(const DirectedGraph& source);

    const DirectedGraph& base_graph() const noexcept { return paths_->graph(); }
    const ShortestPathTable& paths() const noexcept { return *paths_; }
    std::uint64_t step_count() const noexcept { return step_; }
    std::uint64_t learned_count() const noexcept { return learned_count_; }

    bool knows(Vertex u, Vertex v) const {
        const std::size_t bit = index(u, v);
        return (bits_[bit >> 6] >> (bit & 63)) & 1U;
    }
    EdgeSet learned_edges() const;

    /// Applies one augmentation step for the given pair. Returns the number of
    /// newly learned edges.
    std::uint32_t apply_pair(Vertex x, Vertex y);

  private:
    std::size_t index(Vertex u, Vertex v) const noexcept {
        return static_cast<std::size_t>(u) * base_graph().vertex_count() + v;
    }
    bool learn(Vertex u, Vertex v);

    std::shared_ptr<const ShortestPathTable> paths_;
    std::vector<std::uint64_t> bits_;
    std::uint64_t learned_count_ = 0;
    std::uint64_t step_ = 0;
};

/// Uniform ordered pair (x, y), x != y, from a single draw.
Edge sample_ordered_pair(std::uint32_t vertex_count, Rng& rng);

/// One step of the process: sample a pair from rng and apply it.
void step(AugmentationState& state, Rng& rng);

/// |D_t| for t = 0..t_max, driven by substream_rng(seed, 0).
std::vector<std::uint64_t> run_replicate(const DirectedGraph& m0, std::uint64_t t_max, std::uint64_t seed);

struct AccuracyCurve {
    std::vector<std::uint64_t> steps;
    std::vector<double> mean_acc;
    std::vector<double> stderr_acc;
    std::uint64_t replicates = 1;

    std::size_t size() const noexcept { return steps.size(); }
};

struct MonteCarloOptions {
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// Per-replicate |D_t| sampled on a grid. counts[r][i] is |D_{grid[i]}| of
/// replicate r, which runs on substream_rng(seed, r).
struct ReplicateTrajectories {
    std::vector<std::uint64_t> steps;
    std::vector<std::vector<std::uint64_t>> counts;
};

ReplicateTrajectories simulate_trajectories(const DirectedGraph& m0, std::span<const std::uint64_t> step_grid,
                                            std::uint64_t replicates, std::uint64_t seed,
                                            const MonteCarloOptions& options = {});

/// Replicate mean of |D_t|/(V(V-1)) with the sample standard error. Output is
/// independent of the thread count. Throws std::invalid_argument on an empty
/// or unsorted grid or zero replicates.
AccuracyCurve estimate_acc_curve(const DirectedGraph& m0, std::span<const std::uint64_t> step_grid,
                                 std::uint64_t replicates, std::uint64_t seed,
                                 const MonteCarloOptions& options = {});

AccuracyCurve summarize(const ReplicateTrajectories& trajectories, std::uint64_t ordered_pairs);

inline constexpr std::uint32_t kDefaultExactVertexCap = 64;

/// q_ij as exact counts: q_ij = count / (V(V-1)).
struct PairProbabilities {
    std::uint32_t vertex_count = 0;
    std::map<Edge, std::uint64_t> counts;

    std::uint64_t denominator() const noexcept {
        return static_cast<std::uint64_t>(vertex_count) * (vertex_count - 1);
    }
    double q(Vertex i, Vertex j) const;
};

/// Enumerates every ordered source pair (a, b) and counts how often each
/// (i, j) lands in the star set. Throws std::invalid_argument when V exceeds
/// vertex_cap; raising the cap above the default logs a warning.
PairProbabilities pair_probabilities(const DirectedGraph& m0, std::uint32_t vertex_cap = kDefaultExactVertexCap);

AccuracyCurve exact_acc_curve(const DirectedGraph& m0, std::span<const std::uint64_t> step_grid,
                              std::uint32_t vertex_cap = kDefaultExactVertexCap);
AccuracyCurve exact_acc_curve(const DirectedGraph& m0, const PairProbabilities& q,
                              std::span<const std::uint64_t> step_grid);

/// Acc(t) from q counts, for real-valued t.
double exact_acc(const DirectedGraph& m0, const PairProbabilities& q, double t);

}  // namespace entigraph
