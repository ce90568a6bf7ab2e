#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace entigraph {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;
using EdgeSet = std::set<Edge>;

/// Parameters of the random source graph: V vertices, each ordered pair
/// present with probability p = lambda / V. `epsilon` is the slack used by
/// the link-density bounds.
struct ModelParams {
    std::uint32_t vertex_count = 0;
    double lambda = 0.0;
    double edge_probability = 0.0;
    double epsilon = 0.1;

    static ModelParams from_lambda(std::uint32_t vertex_count, double lambda,
                                   double epsilon = 0.1);

    /// Throws std::invalid_argument unless V >= 1, lambda >= 0,
    /// p in [0,1], p == lambda / V (1e-12) and epsilon > 0.
    void validate() const;
};

/// Directed simple graph on dense vertex indices 0..V-1. Immutable once built.
class DirectedGraph {
  public:
    DirectedGraph() = default;

    /// Throws std::invalid_argument on self-loops or out-of-range endpoints.
    /// Duplicate edges collapse.
    DirectedGraph(std::uint32_t vertex_count, std::span<const Edge> edges);

    std::uint32_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edge_count_; }

    /// Out-neighbors of u in ascending order.
    std::span<const Vertex> neighbors(Vertex u) const {
        return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
    }

    bool has_edge(Vertex u, Vertex v) const;

    /// All edges in lexicographic order.
    std::vector<Edge> edges() const;

    /// Number of ordered pairs (u, v) with u != v, i.e. V(V-1).
    std::uint64_t ordered_pair_count() const noexcept {
        return static_cast<std::uint64_t>(vertex_count_) * (vertex_count_ > 0 ? vertex_count_ - 1 : 0);
    }

    static DirectedGraph complete(std::uint32_t vertex_count);
    /// 0 -> 1 -> ... -> V-1
    static DirectedGraph chain(std::uint32_t vertex_count);

    friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

  private:
    std::uint32_t vertex_count_ = 0;
    std::size_t edge_count_ = 0;
    // CSR adjacency
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> targets_;
};

struct Path {
    std::vector<Vertex> vertices;

    std::size_t length() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
    friend bool operator==(const Path&, const Path&) = default;
};

/// Erdős–Rényi directed graph: every ordered pair u != v independently with
/// probability params.edge_probability. Same seed gives the same graph.
DirectedGraph generate_er(const ModelParams& params, std::uint64_t seed);

/// Shortest directed path from src to dst. Each BFS level is expanded in
/// queue order with neighbors in ascending index, and a vertex keeps the first
/// parent that discovers it; the result is the lexicographically smallest
/// shortest path. Throws std::invalid_argument if src == dst or either vertex
/// is out of range.
std::optional<Path> bfs_shortest_path(const DirectedGraph& g, Vertex src, Vertex dst);

/// BFS parent array rooted at src using the same tie-break as
/// bfs_shortest_path. parent[src] == src; unreachable vertices hold kNoParent.
inline constexpr Vertex kNoParent = static_cast<Vertex>(-1);
std::vector<Vertex> bfs_parents(const DirectedGraph& g, Vertex src);

/// Every (u, v), u != v, with v reachable from u. Exhaustive DFS from each
/// vertex; intended as a test oracle.
EdgeSet reachability_closure(const DirectedGraph& g);

/// Precomputed BFS trees from every source. path(a, b) matches
/// bfs_shortest_path(g, a, b) exactly. Costs V^2 vertex slots.
class ShortestPathTable {
  public:
    explicit ShortestPathTable(DirectedGraph graph);

    const DirectedGraph& graph() const noexcept { return graph_; }

    bool reachable(Vertex src, Vertex dst) const {
        return parent_[index(src, dst)] != kNoParent;
    }

    /// Calls visit(v) for each path vertex after src, from dst back towards
    /// src. Returns false when dst is unreachable.
    template <class Visit>
    bool for_each_on_path(Vertex src, Vertex dst, Visit&& visit) const {
        if (parent_[index(src, dst)] == kNoParent) return false;
        for (Vertex v = dst; v != src; v = parent_[index(src, v)]) visit(v);
        return true;
    }

    std::optional<Path> path(Vertex src, Vertex dst) const;

  private:
    std::size_t index(Vertex src, Vertex v) const noexcept {
        return static_cast<std::size_t>(src) * graph_.vertex_count() + v;
    }

    DirectedGraph graph_;
    std::vector<Vertex> parent_;
};

/// {"v": V, "edges": [[u, v], ...]} with edges sorted lexicographically.
std::string graph_to_json(const DirectedGraph& g);
DirectedGraph graph_from_json(const std::string& text);

}  // namespace entigraph
