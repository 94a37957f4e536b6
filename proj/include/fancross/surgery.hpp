#ifndef FANCROSS_SURGERY_HPP
#define FANCROSS_SURGERY_HPP

#include <set>
#include <vector>

#include "fancross/embedding.hpp"

namespace fancross {

// A position along a guide edge: one of its endpoints, or one of its
// crossing points named by index into the guide's crossing list.
struct Anchor {
    VertexId vertex = -1;
    int cross_index = -1;

    static Anchor at(VertexId v) { return {v, -1}; }
    static Anchor crossing(int idx) { return {-1, idx}; }
    bool is_vertex() const { return vertex >= 0; }

    friend bool operator==(const Anchor&, const Anchor&) = default;
};

// One leg of a reroute. All anchors and positions refer to the input
// embedding's crossing lists (snapshot view); the rerouted edge's own
// old crossings are already considered gone.
//
// Follow: run beside `guide` from `from` to `to`, on the given side of
// the guide's tail-to-head orientation. Picks up one crossing with every
// edge crossing the guide strictly inside the span, in span order.
//
// Pierce: cross the guide itself inside the interval `pierce_pos` of its
// crossing list (0 = before its first crossing, c = after its last);
// `pierce_sign` is the sign recorded on the guide's side, i.e. how the
// rerouted edge passes over the guide.
struct RouteDirective {
    enum class Kind { Follow, Pierce };
    enum class Side { Left, Right };

    Kind kind = Kind::Follow;
    EdgeId guide = -1;
    Anchor from, to;
    Side side = Side::Left;
    int pierce_pos = -1;
    Sign pierce_sign = Sign::LR;

    static RouteDirective follow(EdgeId g, Anchor a, Anchor b, Side s) {
        RouteDirective d;
        d.kind = Kind::Follow;
        d.guide = g;
        d.from = a;
        d.to = b;
        d.side = s;
        return d;
    }
    static RouteDirective pierce(EdgeId g, int pos, Sign sign) {
        RouteDirective d;
        d.kind = Kind::Pierce;
        d.guide = g;
        d.pierce_pos = pos;
        d.pierce_sign = sign;
        return d;
    }
};

// Removes the edge. Edge ids above id shift down by one; the outer
// reference is re-anchored if it sat on the removed edge or on a
// segment bounded by one of its crossings.
Embedding delete_edge(const Embedding& e, EdgeId id);

// Adds the uncrossed edge {u,v} inside face `face` (a face id of
// planarize(e)). slot_u / slot_v give the new edge's index in the
// updated rotations; the corner opened at each slot must bound `face`.
// The new edge gets id m.
Embedding insert_edge_in_face(const Embedding& e, VertexId u, VertexId v, int face,
                              int slot_u, int slot_v);

// Replaces the course of edge `id` by the route. The route is read
// against the input state minus the edge's old crossings. Endpoint
// rotation slots: next to the first/last guide when the route starts/
// ends with a Follow anchored at the endpoint, otherwise the old slot is
// kept. The result must validate or the operation throws SurgeryError
// and the input is unchanged.
Embedding reroute_along(const Embedding& e, EdgeId id,
                        const std::vector<RouteDirective>& route);

// Sub-embedding induced on `keep` (relabeled 0..k-1 in the given
// order). Edges leaving the set are removed with their crossings.
Embedding induced_embedding(const Embedding& e, const std::vector<VertexId>& keep);

// Re-anchors an outer reference after a surgery. Walks the outer face
// of `before` for a dart whose location survives: its edge is not in
// `changed` and it leaves a real vertex or a crossing with another
// unchanged edge. edge_map[old id] = new id, -1 for removed edges.
OuterRef map_outer_ref(const Embedding& before, const Embedding& after,
                       const std::vector<EdgeId>& edge_map,
                       const std::set<EdgeId>& changed);

} // namespace fancross

#endif
