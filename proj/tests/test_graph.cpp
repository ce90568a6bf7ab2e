#include <gtest/gtest.h>

#include <cmath>

#include "entigraph/graph.hpp"
#include "oracles.hpp"

using namespace entigraph;

namespace {

DirectedGraph diamond() {
    const std::vector<Edge> e{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    return DirectedGraph(4, e);
}

}  // namespace

TEST(ModelParams, FromLambdaSetsEdgeProbability) {
    const auto m = ModelParams::from_lambda(100, 3.0);
    EXPECT_DOUBLE_EQ(m.edge_probability, 0.03);
    EXPECT_NO_THROW(m.validate());
}

TEST(ModelParams, ValidateRejectsInconsistentParams) {
    ModelParams m = ModelParams::from_lambda(10, 2.0);
    m.edge_probability = 0.5;
    EXPECT_THROW(m.validate(), std::invalid_argument);
    EXPECT_THROW(ModelParams::from_lambda(0, 1.0).validate(), std::invalid_argument);
    EXPECT_THROW(ModelParams::from_lambda(5, 10.0).validate(), std::invalid_argument);
    EXPECT_THROW(ModelParams::from_lambda(5, -1.0).validate(), std::invalid_argument);
    EXPECT_THROW(ModelParams::from_lambda(5, 1.0, 0.0).validate(), std::invalid_argument);
}

TEST(DirectedGraph, RejectsSelfLoopsAndOutOfRange) {
    const std::vector<Edge> loop{{1, 1}};
    EXPECT_THROW(DirectedGraph(3, loop), std::invalid_argument);
    const std::vector<Edge> far{{0, 3}};
    EXPECT_THROW(DirectedGraph(3, far), std::invalid_argument);
}

TEST(DirectedGraph, DuplicatesCollapseAndNeighborsAreSorted) {
    const std::vector<Edge> e{{0, 2}, {0, 1}, {0, 2}, {2, 0}};
    const DirectedGraph g(3, e);
    EXPECT_EQ(g.edge_count(), 3u);
    const auto n = g.neighbors(0);
    ASSERT_EQ(n.size(), 2u);
    EXPECT_EQ(n[0], 1u);
    EXPECT_EQ(n[1], 2u);
    EXPECT_TRUE(g.has_edge(2, 0));
    EXPECT_FALSE(g.has_edge(1, 0));
}

TEST(GenerateEr, ZeroLambdaGivesNoEdges) {
    EXPECT_EQ(generate_er(ModelParams::from_lambda(5, 0.0), 7).edge_count(), 0u);
}

TEST(GenerateEr, EdgeCountNearBinomialMean) {
    const auto m = ModelParams::from_lambda(100, 3.0);
    const double n = 100.0 * 99.0;
    const double sd = std::sqrt(n * m.edge_probability * (1 - m.edge_probability));
    const double count = static_cast<double>(generate_er(m, 1).edge_count());
    EXPECT_LT(std::abs(count - 297.0), 4 * sd);
}

TEST(GenerateEr, SeededDeterminism) {
    const auto m = ModelParams::from_lambda(5, 2.0);
    EXPECT_EQ(generate_er(m, 42), generate_er(m, 42));
    const auto big = ModelParams::from_lambda(60, 3.0);
    EXPECT_NE(generate_er(big, 1).edges(), generate_er(big, 2).edges());
}

TEST(Bfs, ChainPath) {
    const auto p = bfs_shortest_path(DirectedGraph::chain(3), 0, 2);
    ASSERT_TRUE(p);
    EXPECT_EQ(p->vertices, (std::vector<Vertex>{0, 1, 2}));
    EXPECT_EQ(p->length(), 2u);
}

TEST(Bfs, UnreachableIsAbsent) { EXPECT_FALSE(bfs_shortest_path(DirectedGraph(2, {}), 0, 1)); }

TEST(Bfs, DiamondTakesLowerIndex) {
    const auto p = bfs_shortest_path(diamond(), 0, 3);
    ASSERT_TRUE(p);
    EXPECT_EQ(p->vertices, (std::vector<Vertex>{0, 1, 3}));
}

TEST(Bfs, InvalidQueriesThrow) {
    const auto g = DirectedGraph::chain(3);
    EXPECT_THROW(bfs_shortest_path(g, 1, 1), std::invalid_argument);
    EXPECT_THROW(bfs_shortest_path(g, 0, 3), std::invalid_argument);
}

TEST(Bfs, MatchesLexSmallestShortestPathOracle) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::uint32_t v = 3 + seed % 6;
        const auto g = oracle::random_graph(v, 0.35, seed);
        const ShortestPathTable table(g);
        for (Vertex a = 0; a < v; ++a)
            for (Vertex b = 0; b < v; ++b) {
                if (a == b) continue;
                const auto expected = oracle::lex_shortest_path(g, a, b);
                const auto got = bfs_shortest_path(g, a, b);
                ASSERT_EQ(expected.has_value(), got.has_value()) << "seed " << seed << " " << a << "->" << b;
                EXPECT_EQ(table.reachable(a, b), got.has_value());
                if (!got) continue;
                EXPECT_EQ(got->vertices, *expected);
                EXPECT_EQ(table.path(a, b), got);
            }
    }
}

TEST(Bfs, ParentsRootAndUnreachable) {
    const auto parents = bfs_parents(DirectedGraph::chain(3), 1);
    EXPECT_EQ(parents[1], 1u);
    EXPECT_EQ(parents[2], 1u);
    EXPECT_EQ(parents[0], kNoParent);
}

TEST(Closure, Examples) {
    EXPECT_EQ(reachability_closure(DirectedGraph::chain(3)), (EdgeSet{{0, 1}, {0, 2}, {1, 2}}));
    EXPECT_TRUE(reachability_closure(DirectedGraph(4, {})).empty());
    EXPECT_EQ(reachability_closure(DirectedGraph::complete(3)).size(), 6u);
}

TEST(Closure, MatchesFloydWarshall) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto g = oracle::random_graph(2 + seed % 9, 0.2, seed);
        const auto fw = oracle::closure_matrix(g);
        EdgeSet expected;
        for (Vertex i = 0; i < g.vertex_count(); ++i)
            for (Vertex j = 0; j < g.vertex_count(); ++j)
                if (i != j && fw[i][j]) expected.insert({i, j});
        EXPECT_EQ(reachability_closure(g), expected);
    }
}

TEST(GraphJson, RoundTrip) {
    const auto g = generate_er(ModelParams::from_lambda(20, 2.0), 3);
    EXPECT_EQ(graph_from_json(graph_to_json(g)), g);
    EXPECT_EQ(graph_to_json(diamond()), R"({"v":4,"edges":[[0,1],[0,2],[1,3],[2,3]]})");
}

TEST(GraphJson, RejectsMalformedInput) {
    EXPECT_ANY_THROW(graph_from_json("not json"));
    EXPECT_ANY_THROW(graph_from_json(R"({"v":2,"edges":[[0,2]]})"));
    EXPECT_ANY_THROW(graph_from_json(R"({"edges":[]})"));
    EXPECT_ANY_THROW(graph_from_json(R"({"v":2,"edges":[[0]]})"));
}
