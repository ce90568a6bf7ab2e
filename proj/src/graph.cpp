#include "entigraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "entigraph/rng.hpp"

namespace entigraph {

ModelParams ModelParams::from_lambda(std::uint32_t vertex_count, double lambda, double epsilon) {
    ModelParams params;
    params.vertex_count = vertex_count;
    params.lambda = lambda;
    params.edge_probability = vertex_count > 0 ? lambda / vertex_count : 0.0;
    params.epsilon = epsilon;
    return params;
}

void ModelParams::validate() const {
    if (vertex_count == 0) throw std::invalid_argument("vertex_count must be positive");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("lambda must be a finite nonnegative number");
    if (!(edge_probability >= 0.0 && edge_probability <= 1.0))
        throw std::invalid_argument("edge_probability must lie in [0, 1]");
    if (std::abs(edge_probability - lambda / vertex_count) > 1e-12)
        throw std::invalid_argument("edge_probability must equal lambda / vertex_count");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
}

DirectedGraph::DirectedGraph(std::uint32_t vertex_count, std::span<const Edge> edges)
    : vertex_count_(vertex_count) {
    std::vector<Edge> sorted(edges.begin(), edges.end());
    for (const auto& [u, v] : sorted) {
        if (u >= vertex_count || v >= vertex_count)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loops are not allowed");
    }
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    edge_count_ = sorted.size();
    offsets_.assign(static_cast<std::size_t>(vertex_count) + 1, 0);
    targets_.reserve(sorted.size());
    for (const auto& [u, v] : sorted) {
        ++offsets_[u + 1];
        targets_.push_back(v);
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
}

bool DirectedGraph::has_edge(Vertex u, Vertex v) const {
    if (u >= vertex_count_ || v >= vertex_count_) return false;
    auto nbrs = neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> DirectedGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < vertex_count_; ++u)
        for (Vertex v : neighbors(u)) out.emplace_back(u, v);
    return out;
}

DirectedGraph DirectedGraph::complete(std::uint32_t vertex_count) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < vertex_count; ++u)
        for (Vertex v = 0; v < vertex_count; ++v)
            if (u != v) edges.emplace_back(u, v);
    return DirectedGraph(vertex_count, edges);
}

DirectedGraph DirectedGraph::chain(std::uint32_t vertex_count) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u + 1 < vertex_count; ++u) edges.emplace_back(u, u + 1);
    return DirectedGraph(vertex_count, edges);
}

DirectedGraph generate_er(const ModelParams& params, std::uint64_t seed) {
    params.validate();
    const std::uint32_t n = params.vertex_count;
    Rng rng{mix64(seed)};
    std::bernoulli_distribution coin(params.edge_probability);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v && coin(rng)) edges.emplace_back(u, v);
    return DirectedGraph(n, edges);
}

std::vector<Vertex> bfs_parents(const DirectedGraph& g, Vertex src) {
    const std::uint32_t n = g.vertex_count();
    if (src >= n) throw std::invalid_argument("source vertex out of range");
    std::vector<Vertex> parent(n, kNoParent);
    std::vector<Vertex> queue;
    queue.reserve(n);
    parent[src] = src;
    queue.push_back(src);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex u = queue[head];
        for (Vertex v : g.neighbors(u)) {
            if (parent[v] != kNoParent) continue;
            parent[v] = u;
            queue.push_back(v);
        }
    }
    return parent;
}

std::optional<Path> bfs_shortest_path(const DirectedGraph& g, Vertex src, Vertex dst) {
    const std::uint32_t n = g.vertex_count();
    if (src >= n || dst >= n) throw std::invalid_argument("vertex out of range");
    if (src == dst) throw std::invalid_argument("source and destination must differ");

    const auto parent = bfs_parents(g, src);
    if (parent[dst] == kNoParent) return std::nullopt;
    Path path;
    for (Vertex v = dst; v != src; v = parent[v]) path.vertices.push_back(v);
    path.vertices.push_back(src);
    std::reverse(path.vertices.begin(), path.vertices.end());
    return path;
}

EdgeSet reachability_closure(const DirectedGraph& g) {
    const std::uint32_t n = g.vertex_count();
    EdgeSet closure;
    std::vector<char> seen(n);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, s);
        seen[s] = 1;
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            for (Vertex v : g.neighbors(u)) {
                if (seen[v]) continue;
                seen[v] = 1;
                stack.push_back(v);
            }
        }
        for (Vertex v = 0; v < n; ++v)
            if (v != s && seen[v]) closure.emplace(s, v);
    }
    return closure;
}

ShortestPathTable::ShortestPathTable(DirectedGraph graph) : graph_(std::move(graph)) {
    const std::size_t n = graph_.vertex_count();
    parent_.resize(n * n);
    for (Vertex s = 0; s < n; ++s) {
        const auto parents = bfs_parents(graph_, s);
        std::copy(parents.begin(), parents.end(), parent_.begin() + static_cast<std::ptrdiff_t>(s * n));
    }
}

std::optional<Path> ShortestPathTable::path(Vertex src, Vertex dst) const {
    const std::uint32_t n = graph_.vertex_count();
    if (src >= n || dst >= n) throw std::invalid_argument("vertex out of range");
    if (src == dst) throw std::invalid_argument("source and destination must differ");
    Path path;
    if (!for_each_on_path(src, dst, [&](Vertex v) { path.vertices.push_back(v); }))
        return std::nullopt;
    path.vertices.push_back(src);
    std::reverse(path.vertices.begin(), path.vertices.end());
    return path;
}

std::string graph_to_json(const DirectedGraph& g) {
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    nlohmann::ordered_json doc;
    doc["v"] = g.vertex_count();
    doc["edges"] = std::move(edges);
    return doc.dump();
}

DirectedGraph graph_from_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    if (!doc.is_object() || !doc.contains("v") || !doc.contains("edges"))
        throw std::invalid_argument("graph JSON needs \"v\" and \"edges\"");
    const auto n = doc.at("v").get<std::int64_t>();
    if (n <= 0 || n > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("graph JSON: \"v\" must be a positive integer");
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("graph JSON: edge must be [u, v]");
        const auto u = e[0].get<std::int64_t>();
        const auto v = e[1].get<std::int64_t>();
        if (u < 0 || v < 0) throw std::invalid_argument("graph JSON: negative vertex index");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return DirectedGraph(static_cast<std::uint32_t>(n), edges);
}

}  // namespace entigraph
