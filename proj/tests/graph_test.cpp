#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include <cohesion_lab/graph.hpp>
#include <cohesion_lab/verify.hpp>

using namespace cohesion_lab;

namespace {

const char* figure1_text = "a c\nc b\nb a\na d\nd e\ne c\nc d\n";

// Union-find over the edges with both ends in `s`; independent of the BFS in graph.hpp.
bool uf_connected(const Graph& g, const VertexSet& s) {
    std::vector<vertex_id> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](vertex_id x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    for (auto [u, v] : g.edges()) {
        if (s.contains(u) && s.contains(v)) {
            parent[find(u)] = find(v);
        }
    }
    const auto members = s.members();
    for (vertex_id v : members) {
        if (find(v) != find(members.front())) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST(VertexSet, InsertEraseMembers) {
    VertexSet s(130);
    EXPECT_TRUE(s.empty());
    EXPECT_TRUE(s.insert(129));
    EXPECT_TRUE(s.insert(3));
    EXPECT_FALSE(s.insert(3));
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(s.members(), (std::vector<vertex_id>{3, 129}));
    EXPECT_TRUE(s.erase(129));
    EXPECT_FALSE(s.erase(129));
    EXPECT_FALSE(s.contains(129));
    EXPECT_THROW(s.insert(130), validation_error);
    EXPECT_EQ(VertexSet::full(5).size(), 5u);
}

TEST(GraphCore, FromEdgesBuildsSortedAdjacency) {
    const Graph g = Graph::from_edges(4, {{2, 0}, {0, 1}, {3, 0}});
    EXPECT_EQ(g.vertex_count(), 4u);
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_EQ(std::vector<vertex_id>(g.neighbors(0).begin(), g.neighbors(0).end()),
              (std::vector<vertex_id>{1, 2, 3}));
    EXPECT_TRUE(g.has_edge(2, 0));
    EXPECT_FALSE(g.has_edge(1, 2));
    EXPECT_FALSE(g.has_edge(1, 99));
    EXPECT_EQ(g.edges(), (std::vector<edge>{{0, 1}, {0, 2}, {0, 3}}));
}

TEST(GraphCore, FromEdgesRejectsBadInput) {
    EXPECT_THROW(Graph::from_edges(3, {{0, 0}}), validation_error);
    EXPECT_THROW(Graph::from_edges(3, {{0, 1}, {1, 0}}), validation_error);
    EXPECT_THROW(Graph::from_edges(3, {{0, 3}}), validation_error);
    const std::vector<edge> e{{0, 1}};
    EXPECT_THROW(Graph::from_edges(2, e, {"x"}), validation_error);
    EXPECT_THROW(Graph::from_edges(2, e, {"x", "x"}), validation_error);
}

TEST(GraphCore, EmptyGraph) {
    const Graph g = Graph::from_edges(0, {});
    EXPECT_EQ(g.vertex_count(), 0u);
    EXPECT_TRUE(is_connected(g));
    EXPECT_TRUE(connected_components(g).empty());
}

TEST(Parse, Figure1TokensAndCounts) {
    const Graph g = parse_edge_list(figure1_text);
    EXPECT_EQ(g.vertex_count(), 5u);
    EXPECT_EQ(g.edge_count(), 7u);
    EXPECT_EQ(g.labels(), (std::vector<std::string>{"a", "b", "c", "d", "e"}));
    EXPECT_EQ(*g.find("c"), 2u);
    EXPECT_FALSE(g.find("z").has_value());
}

TEST(Parse, CommentsBlankLinesAndCarriageReturns) {
    const Graph g = parse_edge_list("# header\n\n  \n1 2\r\n  # indented comment\n2 3\n");
    EXPECT_EQ(g.vertex_count(), 3u);
    EXPECT_EQ(g.edge_count(), 2u);
}

TEST(Parse, NumericTokensSortNumerically) {
    const Graph g = parse_edge_list("10 9\n9 x\n2 10\n");
    EXPECT_EQ(g.labels(), (std::vector<std::string>{"2", "9", "10", "x"}));
}

TEST(Parse, ErrorsNameTheLine) {
    try {
        parse_edge_list("1 2\n3\n");
        FAIL() << "expected parse_error";
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(parse_edge_list("1 2 3\n"), parse_error);
    try {
        parse_edge_list("1 2\n# c\n2 1\n");
        FAIL() << "expected validation_error";
    } catch (const validation_error& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    EXPECT_THROW(parse_edge_list("x x\n"), validation_error);
}

TEST(Parse, UnlabeledFindAcceptsDecimalIds) {
    const Graph g = Graph::from_edges(3, {{0, 1}});
    EXPECT_EQ(g.find("2"), std::optional<vertex_id>(2));
    EXPECT_FALSE(g.find("3").has_value());
    EXPECT_FALSE(g.find("a").has_value());
}

TEST(Parse, RoundTripIsIdentity) {
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        auto rng = trial_rng(11, 0, trial);
        const Graph g = random_graph(2 + rng() % 12, rng);
        const Graph labelled = parse_edge_list(to_edge_list(g));
        const Graph again = parse_edge_list(to_edge_list(labelled));
        EXPECT_EQ(labelled, again);
        EXPECT_EQ(to_edge_list(labelled), to_edge_list(again));
    }
}

TEST(Subgraph, InducedKeepsLabelsAndEdges) {
    const Graph g = parse_edge_list(figure1_text);
    const Graph h = induced_subgraph(g, VertexSet(5, {2, 3, 4}));
    EXPECT_EQ(h.vertex_count(), 3u);
    EXPECT_EQ(h.edge_count(), 3u);
    EXPECT_EQ(h.labels(), (std::vector<std::string>{"c", "d", "e"}));
}

TEST(Connectivity, SmallCases) {
    const Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {3, 4}});
    EXPECT_TRUE(is_connected(g, VertexSet(5)));
    EXPECT_TRUE(is_connected(g, VertexSet(5, {3})));
    EXPECT_TRUE(is_connected(g, VertexSet(5, {0, 1, 2})));
    EXPECT_FALSE(is_connected(g, VertexSet(5, {0, 2})));
    EXPECT_FALSE(is_connected(g));
    EXPECT_EQ(connected_components(g),
              (std::vector<std::vector<vertex_id>>{{0, 1, 2}, {3, 4}}));
    EXPECT_THROW(is_connected(g, VertexSet(4)), validation_error);
}

TEST(Connectivity, AgreesWithUnionFind) {
    for (std::uint64_t trial = 0; trial < 300; ++trial) {
        auto rng = trial_rng(5, 0, trial);
        const std::size_t n = 1 + rng() % 10;
        const Graph g = random_graph(n, rng);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); m += 1 + rng() % 7) {
            const VertexSet s = detail::to_vertex_set(n, m);
            ASSERT_EQ(is_connected(g, s), uf_connected(g, s)) << to_edge_list(g);
        }
    }
}
