#include "entigraph/process.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <thread>

namespace entigraph {

AugmentationState::AugmentationState(std::shared_ptr<const ShortestPathTable> paths)
    : paths_(std::move(paths)) {
    if (!paths_) throw std::invalid_argument("AugmentationState needs a path table");
    const std::size_t n = base_graph().vertex_count();
    bits_.assign((n * n + 63) / 64, 0);
    for (const auto& [u, v] : base_graph().edges()) learn(u, v);
}

AugmentationState::AugmentationState(const DirectedGraph& source)
    : AugmentationState(std::make_shared<const ShortestPathTable>(source)) {}

bool AugmentationState::learn(Vertex u, Vertex v) {
    const std::size_t bit = index(u, v);
    std::uint64_t& word = bits_[bit >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (bit & 63);
    if (word & mask) return false;
    word |= mask;
    ++learned_count_;
    return true;
}

EdgeSet AugmentationState::learned_edges() const {
    EdgeSet out;
    const std::uint32_t n = base_graph().vertex_count();
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (knows(u, v)) out.emplace(u, v);
    return out;
}

std::uint32_t AugmentationState::apply_pair(Vertex x, Vertex y) {
    std::uint32_t added = 0;
    paths_->for_each_on_path(x, y, [&](Vertex z) { added += learn(x, z) ? 1U : 0U; });
    ++step_;
    return added;
}

Edge sample_ordered_pair(std::uint32_t vertex_count, Rng& rng) {
    const std::uint64_t pairs = static_cast<std::uint64_t>(vertex_count) * (vertex_count - 1);
    std::uniform_int_distribution<std::uint64_t> pick(0, pairs - 1);
    const std::uint64_t idx = pick(rng);
    const auto x = static_cast<Vertex>(idx / (vertex_count - 1));
    auto y = static_cast<Vertex>(idx % (vertex_count - 1));
    if (y >= x) ++y;
    return {x, y};
}

void step(AugmentationState& state, Rng& rng) {
    const std::uint32_t n = state.base_graph().vertex_count();
    if (n < 2) {
        state.apply_pair(0, 0);
        return;
    }
    const auto [x, y] = sample_ordered_pair(n, rng);
    state.apply_pair(x, y);
}

std::vector<std::uint64_t> run_replicate(const DirectedGraph& m0, std::uint64_t t_max, std::uint64_t seed) {
    AugmentationState state(m0);
    Rng rng = substream_rng(seed, 0);
    std::vector<std::uint64_t> sizes;
    sizes.reserve(t_max + 1);
    sizes.push_back(state.learned_count());
    for (std::uint64_t t = 1; t <= t_max; ++t) {
        step(state, rng);
        sizes.push_back(state.learned_count());
    }
    return sizes;
}

namespace {

void check_grid(std::span<const std::uint64_t> grid) {
    if (grid.empty()) throw std::invalid_argument("step grid is empty");
    if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("step grid must be ascending");
}

unsigned resolve_threads(unsigned requested, std::uint64_t work_items) {
    unsigned threads = requested ? requested : std::max(1U, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(work_items, 1)));
}

}  // namespace

ReplicateTrajectories simulate_trajectories(const DirectedGraph& m0, std::span<const std::uint64_t> step_grid,
                                            std::uint64_t replicates, std::uint64_t seed,
                                            const MonteCarloOptions& options) {
    check_grid(step_grid);
    if (replicates == 0) throw std::invalid_argument("replicates must be at least 1");

    ReplicateTrajectories out;
    out.steps.assign(step_grid.begin(), step_grid.end());
    out.counts.assign(replicates, std::vector<std::uint64_t>(step_grid.size()));

    auto table = std::make_shared<const ShortestPathTable>(m0);
    auto run = [&](std::uint64_t r) {
        AugmentationState state(table);
        Rng rng = substream_rng(seed, r);
        auto& row = out.counts[r];
        for (std::size_t i = 0; i < step_grid.size(); ++i) {
            while (state.step_count() < step_grid[i]) step(state, rng);
            row[i] = state.learned_count();
        }
    };

    const unsigned threads = resolve_threads(options.threads, replicates);
    if (threads == 1) {
        for (std::uint64_t r = 0; r < replicates; ++r) run(r);
        return out;
    }
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
        workers.emplace_back([&, w] {
            for (std::uint64_t r = w; r < replicates; r += threads) run(r);
        });
    return out;
}

AccuracyCurve summarize(const ReplicateTrajectories& trajectories, std::uint64_t ordered_pairs) {
    const std::size_t points = trajectories.steps.size();
    const auto reps = static_cast<std::uint64_t>(trajectories.counts.size());
    if (reps == 0) throw std::invalid_argument("no replicates to summarize");
    const double denom = static_cast<double>(ordered_pairs);

    AccuracyCurve curve;
    curve.steps = trajectories.steps;
    curve.replicates = reps;
    curve.mean_acc.resize(points);
    curve.stderr_acc.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        double sum = 0.0;
        for (const auto& row : trajectories.counts) sum += static_cast<double>(row[i]);
        const double mean = sum / static_cast<double>(reps);
        double ss = 0.0;
        for (const auto& row : trajectories.counts) {
            const double d = static_cast<double>(row[i]) - mean;
            ss += d * d;
        }
        curve.mean_acc[i] = mean / denom;
        curve.stderr_acc[i] =
            reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps)) / denom : 0.0;
    }
    return curve;
}

AccuracyCurve estimate_acc_curve(const DirectedGraph& m0, std::span<const std::uint64_t> step_grid,
                                 std::uint64_t replicates, std::uint64_t seed, const MonteCarloOptions& options) {
    if (m0.vertex_count() < 2) throw std::invalid_argument("link density needs at least two vertices");
    return summarize(simulate_trajectories(m0, step_grid, replicates, seed, options), m0.ordered_pair_count());
}

double PairProbabilities::q(Vertex i, Vertex j) const {
    const auto it = counts.find({i, j});
    if (it == counts.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(denominator());
}

PairProbabilities pair_probabilities(const DirectedGraph& m0, std::uint32_t vertex_cap) {
    const std::uint32_t n = m0.vertex_count();
    if (n < 2) throw std::invalid_argument("pair probabilities need at least two vertices");
    if (n > vertex_cap)
        throw std::invalid_argument("graph has " + std::to_string(n) + " vertices, above the exact enumeration cap " +
                                    std::to_string(vertex_cap));
    if (vertex_cap > kDefaultExactVertexCap)
        std::clog << "warning: exact enumeration cap raised to " << vertex_cap << " (O(V^2) BFS paths)\n";

    const ShortestPathTable table(m0);
    PairProbabilities out;
    out.vertex_count = n;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = 0; b < n; ++b) {
            if (a == b) continue;
            table.for_each_on_path(a, b, [&](Vertex z) { ++out.counts[{a, z}]; });
        }
    return out;
}

double exact_acc(const DirectedGraph& m0, const PairProbabilities& q, double t) {
    const double denom = static_cast<double>(q.denominator());
    double sum = static_cast<double>(m0.edge_count());
    for (const auto& [pair, count] : q.counts) {
        if (m0.has_edge(pair.first, pair.second)) continue;
        const double qij = static_cast<double>(count) / denom;
        const double survive = qij >= 1.0 ? (t == 0.0 ? 1.0 : 0.0) : std::exp(t * std::log1p(-qij));
        sum += 1.0 - survive;
    }
    return sum / denom;
}

AccuracyCurve exact_acc_curve(const DirectedGraph& m0, const PairProbabilities& q,
                              std::span<const std::uint64_t> step_grid) {
    check_grid(step_grid);
    if (q.vertex_count != m0.vertex_count()) throw std::invalid_argument("pair probabilities belong to another graph");
    AccuracyCurve curve;
    curve.steps.assign(step_grid.begin(), step_grid.end());
    curve.replicates = 1;
    curve.stderr_acc.assign(step_grid.size(), 0.0);
    curve.mean_acc.reserve(step_grid.size());
    for (std::uint64_t t : step_grid) curve.mean_acc.push_back(exact_acc(m0, q, static_cast<double>(t)));
    return curve;
}

AccuracyCurve exact_acc_curve(const DirectedGraph& m0, std::span<const std::uint64_t> step_grid,
                              std::uint32_t vertex_cap) {
    return exact_acc_curve(m0, pair_probabilities(m0, vertex_cap), step_grid);
}

}  // namespace entigraph
