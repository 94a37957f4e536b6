#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <vector>

#include "fancross/isomorphism.hpp"
#include "fancross/validate.hpp"
#include "test_util.hpp"

using namespace fancross;

TEST_CASE("mirror is an involution and preserves validity") {
    for (const Embedding& e :
         {fixtures::triangle(), fixtures::k4_crossed(), fixtures::fan2(),
          fixtures::host1()}) {
        Embedding m = mirror(e);
        CHECK(validate(m).ok());
        CHECK(mirror(m) == e);
    }
}

TEST_CASE("mirror flips signs and reverses rotations") {
    Embedding e = fixtures::k4_crossed();
    Embedding m = mirror(e);
    CHECK(m.crossings[1][0].sign == Sign::LR);
    CHECK(m.crossings[4][0].sign == Sign::RL);
    CHECK(m.rotations[0] == std::vector<EdgeId>{2, 1, 0});
    CHECK(m.outer.reversed != e.outer.reversed);
}

TEST_CASE("identity relabel is a no-op") {
    Embedding e = fixtures::fan2();
    std::vector<VertexId> id(e.graph.n);
    std::iota(id.begin(), id.end(), 0);
    CHECK(relabel_vertices(e, id) == e);
}

TEST_CASE("relabel keeps the embedding valid and isomorphic") {
    Embedding e = fixtures::host1();
    // Swapping 0 and 1 reverses the host edge {0,1}.
    std::vector<VertexId> perm{1, 0, 2, 3, 4};
    Embedding r = relabel_vertices(e, perm);
    CHECK(validate(r).ok());
    CHECK(map_isomorphic(e, r));
    // The reversed host edge sees its crosser from the other side.
    EdgeId host = r.graph.find_edge(0, 1);
    REQUIRE(host >= 0);
    REQUIRE(r.crossings[host].size() == 1);
    CHECK(r.crossings[host][0].sign == Sign::RL);
}

TEST_CASE("relabel by a rotation of all ids") {
    Embedding e = fixtures::fan2();
    std::vector<VertexId> perm{3, 4, 5, 0, 1, 2};
    Embedding r = relabel_vertices(e, perm);
    CHECK(validate(r).ok());
    CHECK(map_isomorphic(e, r));
    CHECK(canonical_map_code(e) == canonical_map_code(r));
}

TEST_CASE("a map is isomorphic to itself and to its mirror") {
    Embedding e = fixtures::fan2();
    CHECK(map_isomorphic(e, e));
    CHECK(map_isomorphic(e, mirror(e)));
    CHECK(canonical_map_code(e) == canonical_map_code(mirror(e)));
}

TEST_CASE("different graphs with equal size are told apart") {
    // C4 and a triangle with a pendant vertex both have 4 vertices,
    // 4 edges and no crossings.
    Embedding c4 = plane_embedding(Graph::cycle(4),
                                   {{0, 3}, {0, 1}, {1, 2}, {2, 3}},
                                   OuterRef{0, 0, false});
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    Embedding tp = plane_embedding(g, {{0, 1}, {0, 2}, {1, 3, 2}, {3}},
                                   OuterRef{0, 0, false});
    REQUIRE(validate(c4).ok());
    REQUIRE(validate(tp).ok());
    CHECK_FALSE(map_isomorphic(c4, tp));
    CHECK(canonical_map_code(c4) != canonical_map_code(tp));
}

TEST_CASE("crossing count differences are detected") {
    CHECK_FALSE(map_isomorphic(fixtures::k4_planar(), fixtures::k4_crossed()));
}

TEST_CASE("outer face choice does not affect map isomorphism") {
    Embedding a = fixtures::k4_crossed();
    Embedding b = a;
    b.outer = OuterRef{1, 1, false};
    REQUIRE(validate(b).ok());
    CHECK(map_isomorphic(a, b));
    CHECK(canonical_map_code(a) == canonical_map_code(b));
}

TEST_CASE("composition of relabel and mirror stays isomorphic") {
    Embedding e = fixtures::k4_crossed();
    std::vector<VertexId> perm{2, 3, 0, 1};
    Embedding r = mirror(relabel_vertices(e, perm));
    CHECK(validate(r).ok());
    CHECK(map_isomorphic(e, r));
}
