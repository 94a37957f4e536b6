#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "fancross/embedding.hpp"
#include "fancross/graph.hpp"
#include "test_util.hpp"

using namespace fancross;

TEST_CASE("edges are stored with the smaller endpoint first") {
    Graph g(4);
    EdgeId e = g.add_edge(3, 1);
    CHECK(g.tail(e) == 1);
    CHECK(g.head(e) == 3);
    CHECK(g.has_edge(1, 3));
    CHECK(g.has_edge(3, 1));
    CHECK(g.find_edge(1, 3) == e);
}

TEST_CASE("add_edge rejects loops, duplicates and bad ids") {
    Graph g(3);
    g.add_edge(0, 1);
    CHECK_THROWS_AS(g.add_edge(1, 1), EmbeddingError);
    CHECK_THROWS_AS(g.add_edge(1, 0), EmbeddingError);
    CHECK_THROWS_AS(g.add_edge(0, 3), EmbeddingError);
    CHECK_THROWS_AS(g.add_edge(-1, 0), EmbeddingError);
}

TEST_CASE("complete graph has the right size and degrees") {
    Graph k5 = Graph::complete(5);
    CHECK(k5.n == 5);
    CHECK(k5.m() == 10);
    for (int d : k5.degrees()) CHECK(d == 4);
    CHECK(k5.connected());
}

TEST_CASE("cycle, wheel and prism generators") {
    Graph c4 = Graph::cycle(4);
    CHECK(c4.m() == 4);
    for (int d : c4.degrees()) CHECK(d == 2);

    Graph w5 = Graph::wheel(5);
    CHECK(w5.n == 6);
    CHECK(w5.m() == 10);
    CHECK(w5.degrees()[0] == 5);

    Graph pr5 = Graph::prism(5);
    CHECK(pr5.n == 10);
    CHECK(pr5.m() == 15);
    for (int d : pr5.degrees()) CHECK(d == 3);
    CHECK(pr5.connected());
}

TEST_CASE("edge adjacency helpers") {
    Graph g = Graph::complete(4);
    EdgeId e01 = g.find_edge(0, 1);
    EdgeId e23 = g.find_edge(2, 3);
    EdgeId e12 = g.find_edge(1, 2);
    CHECK_FALSE(g.adjacent(e01, e23));
    CHECK(g.adjacent(e01, e12));
    CHECK(g.shared_vertex(e01, e12) == 1);
    CHECK(g.shared_vertex(e01, e23) == -1);
    CHECK(g.other_end(e01, 0) == 1);
    CHECK(g.other_end(e01, 1) == 0);
}

TEST_CASE("disconnected graph is reported as such") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    CHECK_FALSE(g.connected());
}

TEST_CASE("crossing lookups on an embedding") {
    Embedding e = fixtures::fan2();
    CHECK(e.crossing_count() == 2);
    CHECK(e.crosses(0, 1));
    CHECK(e.crosses(1, 0));
    CHECK(e.crosses(0, 2));
    CHECK_FALSE(e.crosses(1, 2));
    CHECK(e.is_crossed(0));
    CHECK_FALSE(e.is_crossed(3));
    CHECK(e.crossing_index(0, 2) == 1);
    CHECK(e.crossing_index(2, 0) == 0);
    CHECK(e.crossing_index(3, 0) == -1);
    auto cr = e.crossers(0);
    CHECK(cr == std::vector<EdgeId>{1, 2});
}

TEST_CASE("rotation_index finds the slot of an edge at a vertex") {
    Embedding e = fixtures::fan2();
    CHECK(e.rotation_index(1, 5) == 0);
    CHECK(e.rotation_index(1, 0) == 1);
    CHECK(e.rotation_index(1, 3) == 2);
    CHECK(e.rotation_index(0, 3) == -1);
}

TEST_CASE("plane_embedding starts with no crossings") {
    Embedding e = fixtures::triangle();
    CHECK(e.crossing_count() == 0);
    for (const auto& list : e.crossings) CHECK(list.empty());
    CHECK(e.outer == OuterRef{0, 0, false});
}
