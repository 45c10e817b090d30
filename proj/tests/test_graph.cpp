#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgcurv/errors.hpp"
#include "dgcurv/graph.hpp"
#include "support.hpp"

using namespace dgcurv;

TEST_CASE("parse_edge_list: bidirected pair") {
    auto g = parse_edge_list("a b\nb a");
    CHECK(g.size() == 2);
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 0}});
    CHECK(g.label(0) == "a");
    CHECK(g.label(1) == "b");
}

TEST_CASE("parse_edge_list: cycle, comments and blank lines") {
    auto g = parse_edge_list("# a directed triangle\n\na b\n  # indented comment\nb c\nc a\n");
    CHECK(g.size() == 3);
    CHECK(g.edge_count() == 3);
    for (VertexId v = 0; v < 3; ++v) {
        CHECK(g.out_degree(v) == 1);
        CHECK(g.in_degree(v) == 1);
    }
    CHECK(g.has_edge(2, 0));
    CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("parse_edge_list: errors") {
    SUBCASE("duplicate edge names its line") {
        try {
            parse_edge_list("a b\na b");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
        }
    }
    SUBCASE("self-loop") { CHECK_THROWS_AS(parse_edge_list("a b\nb b\n"), ParseError); }
    SUBCASE("empty") { CHECK_THROWS_AS(parse_edge_list("# nothing\n\n"), ParseError); }
    SUBCASE("one label") { CHECK_THROWS_AS(parse_edge_list("a\n"), ParseError); }
    SUBCASE("three labels") { CHECK_THROWS_AS(parse_edge_list("a b c\n"), ParseError); }
}

TEST_CASE("parse_json_graph") {
    auto g = parse_json_graph(R"({"vertices": ["x", "y", 7], "edges": [["x", "y"], ["y", 7], [7, "x"]]})");
    CHECK(g.size() == 3);
    CHECK(g.label(2) == "7");
    CHECK(is_strongly_connected(g));

    // Vertex list optional; isolated declared vertices are kept.
    CHECK(parse_json_graph(R"({"edges": [[0, 1], [1, 0]]})").size() == 2);
    CHECK(parse_json_graph(R"({"vertices": [0, 1, 2], "edges": [[0, 1], [1, 0]]})").size() == 3);

    CHECK_THROWS_AS(parse_json_graph(R"({"edges": [[0, 1], [0, 1]]})"), ParseError);
    CHECK_THROWS_AS(parse_json_graph(R"({"edges": [[0, 0]]})"), ParseError);
    CHECK_THROWS_AS(parse_json_graph(R"({"vertices": [0], "edges": [[0, 1]]})"), ParseError);
    CHECK_THROWS_AS(parse_json_graph(R"({"edges": []})"), ParseError);
    CHECK_THROWS_AS(parse_json_graph("{not json"), ParseError);
    CHECK_THROWS_AS(parse_json_graph(R"({"edges": [[0, 1, 2]]})"), ParseError);
}

TEST_CASE("adjacency lists are mutually consistent") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + t % 8;
        auto edges = testing::random_edges(n, 0.4, rng);
        DirectedGraph g(n, edges);
        std::size_t out_total = 0;
        for (VertexId u = 0; u < n; ++u) {
            for (VertexId v : g.out_neighbors(u)) {
                auto in = g.in_neighbors(v);
                CHECK(std::find(in.begin(), in.end(), u) != in.end());
            }
            out_total += g.out_degree(u);
        }
        CHECK(out_total == edges.size());
    }
}

TEST_CASE("is_strongly_connected") {
    CHECK(is_strongly_connected(parse_edge_list("a b\nb a")));
    CHECK_FALSE(is_strongly_connected(parse_edge_list("a b")));
    // 3-cycle plus a chord a -> c.
    CHECK(is_strongly_connected(parse_edge_list("a b\nb c\nc a\na c")));
    CHECK(is_strongly_connected(DirectedGraph(1, std::vector<Edge>{})));

    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + t % 8;
        auto edges = testing::random_edges(n, 0.35, rng);
        CHECK(is_strongly_connected(DirectedGraph(n, edges)) == testing::brute_strongly_connected(n, edges));
    }
}

TEST_CASE("distance") {
    auto c3 = parse_edge_list("a b\nb c\nc a");
    CHECK(distance(c3, 0, 1) == 1u);
    CHECK(distance(c3, 1, 0) == 2u);
    CHECK(distance(c3, 2, 2) == 0u);

    auto path = parse_edge_list("a b");
    CHECK(distance(path, 0, 1) == 1u);
    CHECK_FALSE(distance(path, 1, 0).has_value());
    CHECK_THROWS(distance(path, 0, 5));
}

TEST_CASE("distance matches Floyd-Warshall and obeys the directed triangle inequality") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + t % 7;
        auto edges = testing::random_edges(n, 0.3, rng);
        DirectedGraph g(n, edges);
        auto brute = testing::brute_distances(n, edges);
        for (VertexId x = 0; x < n; ++x) {
            auto row = distances_from(g, x);
            for (VertexId y = 0; y < n; ++y) {
                CHECK(row[y].has_value() == (brute[x][y] >= 0));
                if (row[y]) CHECK(static_cast<long>(*row[y]) == brute[x][y]);
            }
        }
        for (VertexId x = 0; x < n; ++x)
            for (VertexId y = 0; y < n; ++y)
                for (VertexId z = 0; z < n; ++z) {
                    auto xy = distance(g, x, y), yz = distance(g, y, z), xz = distance(g, x, z);
                    if (xy && yz) {
                        REQUIRE(xz.has_value());
                        CHECK(*xz <= *xy + *yz);
                    }
                }
    }
}

TEST_CASE("strongly connected graphs have in- and out-degree at least one") {
    for (const auto& g : testing::random_sc_suite(100, 3)) {
        for (VertexId v = 0; v < g.size(); ++v) {
            CHECK(g.out_degree(v) >= 1);
            CHECK(g.in_degree(v) >= 1);
        }
    }
}

TEST_CASE("generators") {
    CHECK(to_edge_list(make_cycle(3)) == "0 1\n1 2\n2 0\n");
    CHECK(make_bidirected_complete(3).edge_count() == 6);
    CHECK_THROWS_AS(make_cycle(1), std::invalid_argument);
    CHECK_THROWS_AS(make_random_strongly_connected(1, 0.4, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_random_strongly_connected(6, 0.0, 1), std::invalid_argument);

    const auto a = to_edge_list(make_random_strongly_connected(6, 0.4, 42));
    const auto b = to_edge_list(make_random_strongly_connected(6, 0.4, 42));
    CHECK(a == b);

    // Round trip through the parser keeps strong connectivity.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto text = to_edge_list(make_random_strongly_connected(2 + seed % 7, 0.4, seed));
        CHECK(is_strongly_connected(parse_edge_list(text)));
    }

    // p tiny and n large: budget runs out.
    CHECK_THROWS_AS(make_random_strongly_connected(30, 0.01, 1, 5), std::runtime_error);
}

TEST_CASE("permuted relabels edges and labels together") {
    auto g = parse_edge_list("a b\nb c\nc a\na c");
    std::vector<VertexId> perm{2, 0, 1};
    auto h = g.permuted(perm);
    for (auto [u, v] : g.edges()) CHECK(h.has_edge(perm[u], perm[v]));
    CHECK(h.label(2) == "a");
}
