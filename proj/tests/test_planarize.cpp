#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "fancross/planarize.hpp"
#include "test_util.hpp"

using namespace fancross;

TEST_CASE("triangle planarizes to two faces") {
    Planarization p = planarize(fixtures::triangle());
    CHECK(p.n_real == 3);
    CHECK(p.n_cross == 0);
    CHECK(p.n_segments == 3);
    CHECK(p.faces.size() == 2);
    CHECK(p.euler() == 2);
    // Both faces are triangles.
    CHECK(p.faces[0].size() == 3);
    CHECK(p.faces[1].size() == 3);
}

TEST_CASE("path has a single face walked along both sides") {
    Planarization p = planarize(fixtures::path2());
    CHECK(p.faces.size() == 1);
    CHECK(p.faces[0].size() == 4);
    CHECK(p.euler() == 2);
}

TEST_CASE("one crossing adds a degree-4 vertex and splits edges") {
    Embedding e = fixtures::k4_crossed();
    Planarization p = planarize(e);
    CHECK(p.n_real == 4);
    CHECK(p.n_cross == 1);
    // 6 edges, two of them cut once: 8 segments, 5 faces.
    CHECK(p.n_segments == 8);
    CHECK(p.faces.size() == 5);
    CHECK(p.euler() == 2);

    // The crossing vertex alternates between the two edges in ccw order.
    VertexId cv = p.cross_vertex(1, 0);
    REQUIRE(p.vertex_darts[cv].size() == 4);
    std::vector<EdgeId> around;
    for (int d : p.vertex_darts[cv]) around.push_back(p.edge_of(d));
    CHECK(around[0] != around[1]);
    CHECK(around[0] == around[2]);
    CHECK(around[1] == around[3]);
    std::set<EdgeId> seen(around.begin(), around.end());
    CHECK(seen == std::set<EdgeId>{1, 4});
}

TEST_CASE("cross point records both per-edge positions") {
    Planarization p = planarize(fixtures::fan2());
    CHECK(p.n_cross == 2);
    // Edge 0 meets edge 1 at the first point along edge 0.
    const CrossingPoint& cp = p.cross_points[p.cross_at[0][0]];
    CHECK(cp.e == 0);
    CHECK(cp.f == 1);
    CHECK(cp.idx_e == 0);
    CHECK(cp.idx_f == 0);
    CHECK(cp.sign == Sign::LR);
    CHECK(p.cross_at[1][0] == p.cross_at[0][0]);
}

TEST_CASE("outer ref round trips through darts") {
    Embedding e = fixtures::fan2();
    Planarization p = planarize(e);
    int d = p.dart_for(e.outer);
    CHECK(p.ref_for(d) == e.outer);
    CHECK(p.edge_of(d) == 4);
    CHECK_FALSE(p.is_reversed(d));
    CHECK(p.outer_face == p.face_of[d]);
    // Reversed refs map to the opposite dart of the same segment.
    OuterRef rev{4, 0, true};
    CHECK(p.dart_for(rev) == p.alpha(d));
}

TEST_CASE("face walk next and prev are inverse") {
    Planarization p = planarize(fixtures::fan2());
    for (int d = 0; d < 2 * p.n_segments; ++d) {
        CHECK(p.face_prev(p.face_next(d)) == d);
        CHECK(p.face_of[p.face_next(d)] == p.face_of[d]);
    }
}

TEST_CASE("every dart lies on exactly one traced face") {
    Planarization p = planarize(fixtures::k4_planar());
    CHECK(p.faces.size() == 4);
    std::vector<int> hit(2 * p.n_segments, 0);
    for (const auto& face : p.faces)
        for (int d : face) hit[d]++;
    for (int h : hit) CHECK(h == 1);
}

TEST_CASE("fan2 has the expected face count") {
    Planarization p = planarize(fixtures::fan2());
    // 8 real vertices' worth of Euler arithmetic: V=8, E=10, F=4.
    CHECK(p.n_real + p.n_cross == 8);
    CHECK(p.n_segments == 10);
    CHECK(p.faces.size() == 4);
}

TEST_CASE("planarize rejects an invalid embedding") {
    Embedding e = fixtures::k4_crossed();
    e.crossings[4][0].sign = Sign::RL;  // breaks reciprocity
    CHECK_THROWS_AS(planarize(e), EmbeddingError);
}
