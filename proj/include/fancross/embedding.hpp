#ifndef FANCROSS_EMBEDDING_HPP
#define FANCROSS_EMBEDDING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "fancross/graph.hpp"

namespace fancross {

// Side from which a crosser passes over its host edge, looking along the
// host from tail to head. LR: the crosser runs from the host's left to
// its right. The paired record on the other edge carries the opposite
// sign; validate() enforces that.
enum class Sign : std::uint8_t { LR, RL };

inline Sign flip(Sign s) { return s == Sign::LR ? Sign::RL : Sign::LR; }
inline const char* sign_name(Sign s) { return s == Sign::LR ? "LR" : "RL"; }

struct CrossingRecord {
    EdgeId other = -1;
    Sign sign = Sign::LR;

    friend bool operator==(const CrossingRecord&, const CrossingRecord&) = default;
};

// Names a dart of the planarization without depending on derived ids:
// segment `segment` of `edge` (0 = the piece at the tail), walked
// forward (tail to head) or reversed. Used to pin the outer face.
struct OuterRef {
    EdgeId edge = 0;
    int segment = 0;
    bool reversed = false;

    friend bool operator==(const OuterRef&, const OuterRef&) = default;
};

// Combinatorial embedding of a simple graph in the plane.
//
// crossings[e] lists the crossings on edge e in the order they occur
// walking from tail(e) to head(e). rotations[v] lists the edges leaving
// v in counterclockwise order. `outer` designates the face lying to the
// left of the named dart as the outer face.
struct Embedding {
    Graph graph;
    std::vector<std::vector<CrossingRecord>> crossings;
    std::vector<std::vector<EdgeId>> rotations;
    OuterRef outer;

    Embedding() = default;
    // Sizes the crossing and rotation lists for the graph; both start
    // empty and the rotations must be filled in by the caller.
    explicit Embedding(Graph g)
        : graph(std::move(g)), crossings(graph.m()), rotations(graph.n) {}

    int crossing_count() const;

    bool is_crossed(EdgeId e) const { return !crossings[e].empty(); }

    // Position of f in e's crossing list, -1 when the pair does not cross.
    // Simplicity (each pair crosses at most once) makes this unambiguous.
    int crossing_index(EdgeId e, EdgeId f) const;
    bool crosses(EdgeId e, EdgeId f) const { return crossing_index(e, f) >= 0; }

    // Edges crossing e, in order along e from its tail.
    std::vector<EdgeId> crossers(EdgeId e) const;

    // Position of e in rotations[v], -1 when absent.
    int rotation_index(VertexId v, EdgeId e) const;

    friend bool operator==(const Embedding&, const Embedding&) = default;
};

// An uncrossed plane embedding built from rotations only. Rotation lists
// are taken as given (caller supplies counterclockwise order).
Embedding plane_embedding(const Graph& g,
                          std::vector<std::vector<EdgeId>> rotations,
                          OuterRef outer = {});

} // namespace fancross

#endif
