#pragma once

// Hand-checked fixture embeddings shared across the test binaries.
// Each one was worked out on paper from explicit coordinates; the
// rotation orders and crossing signs below are frozen from that work.

#include "fancross/embedding.hpp"
#include "fancross/graph.hpp"

namespace fixtures {

using namespace fancross;

// Plane triangle on vertices 0,1,2. Two faces.
inline Embedding triangle() {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    return plane_embedding(g, {{0, 1}, {0, 2}, {1, 2}}, OuterRef{0, 0, false});
}

// Plane path 0-1-2. One face.
inline Embedding path2() {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return plane_embedding(g, {{0}, {0, 1}, {1}}, OuterRef{0, 0, false});
}

// K4 drawn plane: triangle 0,1,2 with vertex 3 inside.
// Coordinates used: 0=(0,0), 1=(4,0), 2=(2,3), 3=(2,1).
inline Embedding k4_planar() {
    Graph g = Graph::complete(4);
    return plane_embedding(g,
                           {{0, 2, 1}, {3, 4, 0}, {1, 5, 3}, {5, 2, 4}},
                           OuterRef{0, 0, true});
}

// K4 drawn as a square 0,1,2,3 (ccw) with both diagonals; the diagonals
// {0,2} and {1,3} cross once in the middle. {1,3} passes {0,2} right
// to left as seen walking 0 toward 2.
inline Embedding k4_crossed() {
    Graph g = Graph::complete(4);
    Embedding e(g);
    e.rotations = {{0, 1, 2}, {3, 4, 0}, {5, 1, 3}, {5, 2, 4}};
    e.crossings[1] = {{4, Sign::RL}};
    e.crossings[4] = {{1, Sign::LR}};
    e.outer = OuterRef{0, 0, true};
    return e;
}

// Host edge {0,1} crossed left-to-right by {2,3} and {2,4}, in that
// order from vertex 0. The edge {1,5} runs as an uncrossed arc above
// everything; {0,5} and {1,4} close the graph up. Coordinates:
// 0=(0,0), 1=(4,0), 2=(1.5,2), 3=(1,-2), 4=(2,-2), 5=(-2,0).
// Edge ids: 0={0,1}, 1={2,3}, 2={2,4}, 3={1,4}, 4={0,5}, 5={1,5}.
inline Embedding fan2() {
    Graph g(6);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    g.add_edge(2, 4);
    g.add_edge(1, 4);
    g.add_edge(0, 5);
    g.add_edge(1, 5);
    Embedding e(g);
    e.rotations = {{0, 4}, {5, 0, 3}, {1, 2}, {1}, {3, 2}, {4, 5}};
    e.crossings[0] = {{1, Sign::LR}, {2, Sign::LR}};
    e.crossings[1] = {{0, Sign::RL}};
    e.crossings[2] = {{0, Sign::RL}};
    e.outer = OuterRef{4, 0, false};
    return e;
}

// Host edge {0,1} crossed once by {2,3}; {1,4} dips below vertex 3 and
// stays uncrossed; {0,4} and {0,2} close the graph up. Coordinates:
// 0=(0,0), 1=(4,0), 2=(2,2), 3=(2,-2), 4=(-1,-1).
// Edge ids: 0={0,1}, 1={2,3}, 2={1,4}, 3={0,4}, 4={0,2}.
inline Embedding host1() {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    g.add_edge(1, 4);
    g.add_edge(0, 4);
    g.add_edge(0, 2);
    Embedding e(g);
    e.rotations = {{0, 4, 3}, {0, 2}, {4, 1}, {1}, {3, 2}};
    e.crossings[0] = {{1, Sign::LR}};
    e.crossings[1] = {{0, Sign::RL}};
    e.outer = OuterRef{4, 0, false};
    return e;
}

// Triangle 0,1,2 crossed by the single edge {3,4}: from vertex 3 the
// edge crosses {0,2}, then {1,2}, then {0,1}, looping around vertex 1
// outside the triangle before ending inside it. The uncrossed edge
// {0,3} keeps the graph connected. Coordinates: 0=(0,0), 1=(4,0),
// 2=(2,3), 3=(-2,1), 4=(2.4,0.5); the loop passes east of vertex 1
// below the x-axis.
// Edge ids: 0={0,1}, 1={0,2}, 2={1,2}, 3={3,4}, 4={0,3}.
inline Embedding tri_crossed() {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    g.add_edge(3, 4);
    g.add_edge(0, 3);
    Embedding e(g);
    e.rotations = {{0, 1, 4}, {0, 2}, {1, 2}, {3, 4}, {3}};
    e.crossings[0] = {{3, Sign::RL}};
    e.crossings[1] = {{3, Sign::LR}};
    e.crossings[2] = {{3, Sign::LR}};
    e.crossings[3] = {{1, Sign::RL}, {2, Sign::RL}, {0, Sign::LR}};
    e.outer = OuterRef{3, 0, false};
    return e;
}

// Base edge {0,1} crossed from both sides by two edges at apex 2: {2,4}
// loops west around vertex 0 and crosses the base upward at (1,0);
// {2,3} drops straight through it at (2.5,0). The cycle through the
// apex encloses vertex 0; the uncrossed edge {0,2} keeps the graph
// connected. Coordinates: 0=(0,0), 1=(4,0), 2=(2,2), 3=(2.5,-1),
// 4=(1.5,0.8).
// Edge ids: 0={0,1}, 1={2,3}, 2={2,4}, 3={0,2}.
inline Embedding config2() {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    g.add_edge(2, 4);
    g.add_edge(0, 2);
    Embedding e(g);
    e.rotations = {{0, 3}, {0}, {2, 3, 1}, {1}, {2}};
    e.crossings[0] = {{2, Sign::RL}, {1, Sign::LR}};
    e.crossings[1] = {{0, Sign::RL}};
    e.crossings[2] = {{0, Sign::LR}};
    e.outer = OuterRef{1, 1, false};
    return e;
}

// config2 with the apex joined to both base endpoints by uncrossed
// edges, completing the triangle (2,0,1) around the crossings.
// Edge ids: 0={0,1}, 1={2,3}, 2={2,4}, 3={0,2}, 4={1,2}.
inline Embedding config2_aug() {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    g.add_edge(2, 4);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    Embedding e(g);
    e.rotations = {{0, 3}, {0, 4}, {2, 3, 1, 4}, {1}, {2}};
    e.crossings[0] = {{2, Sign::RL}, {1, Sign::LR}};
    e.crossings[1] = {{0, Sign::RL}};
    e.crossings[2] = {{0, Sign::LR}};
    e.outer = OuterRef{1, 1, false};
    return e;
}

// Host edge {0,1} crossed downward by the two independent edges {2,3}
// and {4,5}; {2,4} and {0,2} keep the graph connected and uncrossed.
// Coordinates: 0=(0,0), 1=(6,0), 2=(1,1), 3=(1,-1), 4=(2,1), 5=(2,-1).
// Edge ids: 0={0,1}, 1={2,3}, 2={4,5}, 3={2,4}, 4={0,2}.
inline Embedding indep() {
    Graph g(6);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    g.add_edge(4, 5);
    g.add_edge(2, 4);
    g.add_edge(0, 2);
    Embedding e(g);
    e.rotations = {{0, 4}, {0}, {3, 4, 1}, {1}, {2, 3}, {2}};
    e.crossings[0] = {{1, Sign::LR}, {2, Sign::LR}};
    e.crossings[1] = {{0, Sign::RL}};
    e.crossings[2] = {{0, Sign::RL}};
    e.outer = OuterRef{0, 2, false};
    return e;
}

}  // namespace fixtures
