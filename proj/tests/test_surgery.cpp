#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "fancross/isomorphism.hpp"
#include "fancross/planarize.hpp"
#include "fancross/surgery.hpp"
#include "fancross/validate.hpp"
#include "test_util.hpp"

using namespace fancross;
using Side = RouteDirective::Side;

TEST_CASE("deleting an uncrossed edge keeps the rest intact") {
    Embedding e = fixtures::host1();
    Embedding out = delete_edge(e, 2);  // {1,4}
    CHECK(validate(out).ok());
    CHECK(out.graph.m() == 4);
    CHECK(out.graph.edges == std::vector<std::pair<VertexId, VertexId>>{
                                 {0, 1}, {2, 3}, {0, 4}, {0, 2}});
    CHECK(out.crossings[0] == std::vector<CrossingRecord>{{1, Sign::LR}});
    CHECK(out.rotations[0] == std::vector<EdgeId>{0, 3, 2});
}

TEST_CASE("deleting a crossed edge removes the crossing from both sides") {
    Embedding e = fixtures::k4_crossed();
    Embedding out = delete_edge(e, 4);  // diagonal {1,3}
    CHECK(validate(out).ok());
    CHECK(out.crossing_count() == 0);
    CHECK(out.graph.m() == 5);
}

TEST_CASE("deleting the outer edge re-anchors the outer face") {
    Embedding e = fixtures::k4_crossed();
    Embedding out = delete_edge(e, 0);
    CHECK(validate(out).ok());
    // The walk around the old outer face settles on the next unchanged
    // dart, which leaves vertex 0 along the old edge {0,3}.
    CHECK(out.outer == OuterRef{1, 0, false});
    CHECK(out.crossing_count() == 1);
}

TEST_CASE("a deletion that disconnects the graph is refused") {
    Embedding e = fixtures::host1();
    CHECK_THROWS_AS(delete_edge(e, 1), EmbeddingError);
}

TEST_CASE("insert a chord into the single face of a path") {
    Embedding e = fixtures::path2();
    Planarization p = planarize(e);
    REQUIRE(p.faces.size() == 1);
    Embedding out = insert_edge_in_face(e, 0, 2, 0, 0, 0);
    CHECK(validate(out).ok());
    CHECK(out.graph.m() == 3);
    CHECK(map_isomorphic(out, fixtures::triangle()));
}

TEST_CASE("delete then insert restores the triangle up to isomorphism") {
    Embedding tri = fixtures::triangle();
    Embedding path = delete_edge(tri, 2);
    Planarization p = planarize(path);
    Embedding back = insert_edge_in_face(path, 1, 2, p.outer_face, 0, 0);
    CHECK(validate(back).ok());
    CHECK(map_isomorphic(back, tri));
}

TEST_CASE("insert across a bigger face, into chosen corners") {
    Embedding e = fixtures::host1();
    Planarization p = planarize(e);
    Embedding out = insert_edge_in_face(e, 2, 4, p.outer_face, 2, 1);
    CHECK(validate(out).ok());
    EdgeId id = out.graph.find_edge(2, 4);
    CHECK(id == 5);
    CHECK(out.crossings[id].empty());
    CHECK(out.rotations[2] == std::vector<EdgeId>{4, 1, 5});
    CHECK(out.rotations[4] == std::vector<EdgeId>{3, 5, 2});
}

TEST_CASE("insert into a face the corner does not bound is refused") {
    Embedding e = fixtures::host1();
    Planarization p = planarize(e);
    // Dart 0 runs from vertex 0 toward the first crossing of edge 0; the
    // face on its left is an inner face not bounded by vertex 4's corners.
    int inner = p.face_of[0];
    REQUIRE(inner != p.outer_face);
    CHECK_THROWS_AS(insert_edge_in_face(e, 2, 4, inner, 2, 1), EmbeddingError);
}

TEST_CASE("insert refuses duplicate edges and bad slots") {
    Embedding e = fixtures::path2();
    CHECK_THROWS_AS(insert_edge_in_face(e, 0, 1, 0, 0, 0), EmbeddingError);
    CHECK_THROWS_AS(insert_edge_in_face(e, 0, 2, 0, 5, 0), EmbeddingError);
}

TEST_CASE("an identity pierce route reproduces the embedding exactly") {
    Embedding e = fixtures::k4_crossed();
    // Edge {1,3} crosses edge {0,2} once; re-drawing it through the same
    // point with the same sign is a no-op.
    std::vector<RouteDirective> route{RouteDirective::pierce(1, 0, Sign::RL)};
    Embedding out = reroute_along(e, 4, route);
    CHECK(out == e);
}

TEST_CASE("follow spanning no crossings can still move the course") {
    // Re-draw {1,4} hugging the host {0,1} and then the crosser {2,4}
    // down to its head. Nothing lies strictly inside either span, and
    // the rotations come out where they started: the new course is
    // isotopic to the old one.
    Embedding e = fixtures::fan2();
    std::vector<RouteDirective> route{
        RouteDirective::follow(0, Anchor::at(1), Anchor::crossing(1), Side::Right),
        RouteDirective::follow(2, Anchor::crossing(0), Anchor::at(4), Side::Left)};
    Embedding out = reroute_along(e, 3, route);
    CHECK(out == e);
}

TEST_CASE("follow across one crossing picks it up with the right sign") {
    Embedding e = fixtures::host1();
    std::vector<RouteDirective> route{
        RouteDirective::follow(0, Anchor::at(1), Anchor::at(0), Side::Right),
        RouteDirective::follow(3, Anchor::at(0), Anchor::at(4), Side::Left)};
    Embedding out = reroute_along(e, 2, route);
    CHECK(validate(out).ok());
    CHECK(out.crossings[2] == std::vector<CrossingRecord>{{1, Sign::RL}});
    // The crosser sees the rerouted edge south of the host crossing.
    CHECK(out.crossings[1] ==
          std::vector<CrossingRecord>{{0, Sign::RL}, {2, Sign::LR}});
    CHECK(out.crossings[0] == std::vector<CrossingRecord>{{1, Sign::LR}});
    CHECK(out.rotations[1] == std::vector<EdgeId>{0, 2});
    CHECK(out.crossing_count() == 2);
}

TEST_CASE("follow across two crossings picks both up in walk order") {
    Embedding e = fixtures::fan2();
    std::vector<RouteDirective> route{
        RouteDirective::follow(0, Anchor::at(1), Anchor::at(0), Side::Right),
        RouteDirective::follow(4, Anchor::at(0), Anchor::at(5), Side::Left)};
    Embedding out = reroute_along(e, 5, route);
    CHECK(validate(out).ok());
    // Walking backward along the host meets its second crosser first.
    CHECK(out.crossings[5] ==
          std::vector<CrossingRecord>{{2, Sign::RL}, {1, Sign::RL}});
    CHECK(out.crossings[1] ==
          std::vector<CrossingRecord>{{0, Sign::RL}, {5, Sign::LR}});
    CHECK(out.crossings[2] ==
          std::vector<CrossingRecord>{{0, Sign::RL}, {5, Sign::LR}});
    CHECK(out.crossings[0] ==
          std::vector<CrossingRecord>{{1, Sign::LR}, {2, Sign::LR}});
    // The rerouted edge now leaves vertex 1 right after the host edge.
    CHECK(out.rotations[1] == std::vector<EdgeId>{0, 5, 3});
    CHECK(out.crossing_count() == 4);
}

TEST_CASE("a route must run from tail to head") {
    Embedding e = fixtures::host1();
    std::vector<RouteDirective> bad{
        RouteDirective::follow(0, Anchor::at(1), Anchor::at(0), Side::Right)};
    CHECK_THROWS_AS(reroute_along(e, 2, bad), SurgeryError);
}

TEST_CASE("disconnected follow legs are refused") {
    Embedding e = fixtures::fan2();
    std::vector<RouteDirective> bad{
        RouteDirective::follow(0, Anchor::at(1), Anchor::crossing(0), Side::Right),
        RouteDirective::follow(2, Anchor::crossing(0), Anchor::at(4), Side::Left)};
    // The first leg ends at the host's crossing with edge 1, the second
    // starts at its crossing with edge 2: different points.
    CHECK_THROWS_AS(reroute_along(e, 3, bad), SurgeryError);
}

TEST_CASE("a route may not cross an edge adjacent to the rerouted one") {
    Embedding e = fixtures::host1();
    std::vector<RouteDirective> bad{RouteDirective::pierce(1, 0, Sign::LR)};
    // Edge {0,2} shares vertex 2 with the guide {2,3}.
    CHECK_THROWS_AS(reroute_along(e, 4, bad), SurgeryError);
}

TEST_CASE("a route may not cross the same edge twice") {
    Embedding e = fixtures::k4_crossed();
    std::vector<RouteDirective> bad{RouteDirective::pierce(4, 0, Sign::LR),
                                    RouteDirective::pierce(4, 1, Sign::RL)};
    CHECK_THROWS_AS(reroute_along(e, 1, bad), SurgeryError);
}

TEST_CASE("induced embedding on a vertex subset") {
    Embedding e = fixtures::k4_crossed();
    Embedding tri = induced_embedding(e, {0, 1, 2});
    CHECK(validate(tri).ok());
    CHECK(tri.graph.n == 3);
    CHECK(tri.graph.m() == 3);
    CHECK(tri.crossing_count() == 0);
    CHECK(map_isomorphic(tri, fixtures::triangle()));
}

TEST_CASE("induced embedding drops crossings with removed edges") {
    Embedding e = fixtures::fan2();
    Embedding out = induced_embedding(e, {0, 1, 4, 5});
    CHECK(validate(out).ok());
    CHECK(out.graph.n == 4);
    CHECK(out.graph.m() == 4);
    CHECK(out.crossing_count() == 0);
}

TEST_CASE("induced embedding relabels by list order") {
    Embedding e = fixtures::k4_crossed();
    Embedding out = induced_embedding(e, {2, 0, 1});
    CHECK(validate(out).ok());
    // Old vertices 2,0,1 become 0,1,2.
    CHECK(out.graph.has_edge(0, 1));  // old {0,2}
    CHECK(out.graph.has_edge(1, 2));  // old {0,1}
    CHECK(out.graph.has_edge(0, 2));  // old {1,2}
}
