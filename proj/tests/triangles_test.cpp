#include <gtest/gtest.h>

#include <cohesion_lab/triangles.hpp>
#include <cohesion_lab/verify.hpp>

using namespace cohesion_lab;

namespace {

Graph figure1() { return parse_edge_list("a c\nc b\nb a\na d\nd e\ne c\nc d\n"); }

vertex_id id(const Graph& g, const char* token) { return *g.find(token); }

Graph complete(std::size_t n) {
    std::vector<edge> e;
    for (vertex_id u = 0; u < n; ++u) {
        for (vertex_id v = u + 1; v < n; ++v) {
            e.emplace_back(u, v);
        }
    }
    return Graph::from_edges(n, e);
}

} // namespace

TEST(Census, Figure1SquareSet) {
    const Graph g = figure1();
    const VertexSet square(5, {id(g, "a"), id(g, "b"), id(g, "c"), id(g, "d")});
    const auto c = census(g, square);
    EXPECT_EQ(c.inside, 2);
    EXPECT_EQ(c.outbound, 1);
    EXPECT_EQ(c.touching_one, 0);
    EXPECT_EQ(c.outside, 0);
    EXPECT_EQ(c.total(), 3);
}

TEST(Census, K4ThreeVertices) {
    const auto c = census(complete(4), VertexSet(4, {0, 1, 2}));
    EXPECT_EQ(c.inside, 1);
    EXPECT_EQ(c.outbound, 3);
}

TEST(Census, EmptyGraphAndEmptySet) {
    EXPECT_EQ(census(Graph::from_edges(3, {}), VertexSet::full(3)), TriangleCensus{});
    const auto c = census(complete(4), VertexSet(4));
    EXPECT_EQ(c.outside, 4);
    EXPECT_EQ(c.inside, 0);
}

TEST(Census, UniverseMismatchThrows) {
    EXPECT_THROW(census(complete(4), VertexSet(5)), validation_error);
}

TEST(TriangleCount, KnownGraphs) {
    EXPECT_EQ(triangle_count(figure1()), 3u);
    EXPECT_EQ(triangle_count(complete(6)), 20u);
    EXPECT_EQ(triangle_count(detail::cycle_graph(6)), 0u);
}

// Values read off the drawing: the top side b-c has one common neighbour (a),
// the diagonal a-c and the right side c-d have two.
TEST(EdgeTriangleCount, Figure1Edges) {
    const Graph g = figure1();
    EXPECT_EQ(edge_triangle_count(g, id(g, "b"), id(g, "c")), 1u);
    EXPECT_EQ(edge_triangle_count(g, id(g, "a"), id(g, "c")), 2u);
    EXPECT_EQ(edge_triangle_count(g, id(g, "c"), id(g, "d")), 2u);
    EXPECT_EQ(edge_triangle_count(g, id(g, "a"), id(g, "b")), 1u);
    EXPECT_EQ(edge_triangle_count(g, id(g, "d"), id(g, "e")), 1u);
    EXPECT_THROW(edge_triangle_count(g, id(g, "b"), id(g, "e")), domain_error);
}

TEST(EdgeTriangleCount, SumIsThreeTimesTriangles) {
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        auto rng = trial_rng(21, 0, trial);
        const Graph g = random_graph(1 + rng() % 14, rng);
        std::uint64_t sum = 0;
        for (auto [u, v] : g.edges()) {
            sum += edge_triangle_count(g, u, v);
        }
        ASSERT_EQ(sum, 3 * triangle_count(g));
    }
}

TEST(Delta, K4AddVertex) {
    const auto d = add_vertex_delta(complete(4), VertexSet(4, {0, 1, 2}), 3);
    EXPECT_EQ(d.d_inside, 3);
    EXPECT_EQ(d.d_outbound, -3);
}

TEST(Delta, IsolatedVertexIsZero) {
    const Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {0, 2}});
    const auto d = add_vertex_delta(g, VertexSet(4, {0, 1}), 3);
    EXPECT_EQ(d.d_inside, 0);
    EXPECT_EQ(d.d_outbound, 0);
    EXPECT_EQ(d.d_touching_one, 0);
    EXPECT_EQ(d.d_outside, 0);
}

TEST(Delta, Preconditions) {
    const Graph g = complete(4);
    EXPECT_THROW(add_vertex_delta(g, VertexSet(4, {0, 1}), 1), domain_error);
    EXPECT_THROW(remove_vertex_delta(g, VertexSet(4, {0, 1}), 2), domain_error);
}

TEST(Delta, MatchesRecomputationAndRoundTrips) {
    for (std::uint64_t trial = 0; trial < 300; ++trial) {
        auto rng = trial_rng(22, 0, trial);
        const std::size_t n = 2 + rng() % 12;
        const Graph g = random_graph(n, rng);
        VertexSet s(n);
        for (vertex_id v = 0; v < n; ++v) {
            if (rng() % 2) {
                s.insert(v);
            }
        }
        const auto before = census(g, s);
        const auto v = static_cast<vertex_id>(rng() % n);
        if (s.contains(v)) {
            VertexSet smaller = s;
            smaller.erase(v);
            const auto d = remove_vertex_delta(g, s, v);
            ASSERT_EQ(before + d, census(g, smaller));
            ASSERT_EQ(census(g, smaller) + add_vertex_delta(g, smaller, v), before);
        } else {
            VertexSet bigger = s;
            bigger.insert(v);
            const auto d = add_vertex_delta(g, s, v);
            ASSERT_EQ(before + d, census(g, bigger));
            ASSERT_EQ(census(g, bigger) + remove_vertex_delta(g, bigger, v), before);
        }
    }
}

TEST(Census, MatchesNaiveOracle) {
    for (std::uint64_t trial = 0; trial < 300; ++trial) {
        auto rng = trial_rng(23, 0, trial);
        const std::size_t n = 1 + rng() % 14;
        const Graph g = random_graph(n, rng);
        const TriangleIndex index(g);
        for (int rep = 0; rep < 8; ++rep) {
            const VertexSet s = detail::to_vertex_set(n, rng() & ((std::uint64_t{1} << n) - 1));
            ASSERT_EQ(index.census(s), naive_census(g, s)) << to_edge_list(g);
        }
    }
}

TEST(Census, BucketsSumToTriangleCount) {
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        auto rng = trial_rng(24, 0, trial);
        const std::size_t n = 1 + rng() % 14;
        const Graph g = random_graph(n, rng);
        const VertexSet s = detail::to_vertex_set(n, rng() & ((std::uint64_t{1} << n) - 1));
        ASSERT_EQ(census(g, s).total(), triangle_count(g));
    }
}

TEST(NaiveCensus, GuardRefusesLargeGraphs) {
    EXPECT_THROW(naive_census(Graph::from_edges(501, {}), VertexSet(501)), refusal_error);
}
