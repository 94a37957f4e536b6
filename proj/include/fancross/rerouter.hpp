#ifndef FANCROSS_REROUTER_HPP
#define FANCROSS_REROUTER_HPP

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fancross/classifier.hpp"
#include "fancross/embedding.hpp"

namespace fancross {

// One applied transformation step: which rule fired, what it targeted,
// and the full old/new crossing lists of every touched edge plus the
// rotation changes, so the step can be replayed verbatim.
struct RerouteStep {
    std::string rule;
    // Triangle (a,b,c) or base edge endpoints, whichever applies.
    std::vector<VertexId> target;
    struct EdgeChange {
        EdgeId edge;
        std::vector<CrossingRecord> before;
        std::vector<CrossingRecord> after;
    };
    std::vector<EdgeChange> edges;
    struct RotationChange {
        VertexId vertex;
        std::vector<EdgeId> before;
        std::vector<EdgeId> after;
    };
    std::vector<RotationChange> rotations;
    int crossing_delta = 0;
    // Outer reference after the step when it moved.
    bool outer_changed = false;
    OuterRef outer_after;
    // Rule-specific replay data. Course steps replay from the recorded
    // lists; base replacement records endpoints and slots here.
    nlohmann::ordered_json params;
};

struct RerouteTrace {
    std::vector<RerouteStep> steps;
};

nlohmann::ordered_json trace_to_json(const RerouteTrace& t);

// Replays the recorded steps on `input`; equals the pipeline's output
// when the trace is faithful.
Embedding replay_trace(const Embedding& input, const RerouteTrace& t);

// Mirrors the embedding when the context runs counterclockwise, so the
// returned context is clockwise or bidirectional with the standard
// crossing order {a,c}, {b,c}, {a,b} seen from the apex.
std::pair<Embedding, TriangleCrossingContext>
normalize_triangle(const Embedding& e, const TriangleCrossingContext& ctx);

// The three triangle elimination rules. Each returns an embedding in
// which no former triangle-crossing edge of ctx crosses all three
// triangle edges, without introducing a crossed triangle that was not
// already present.
Embedding eliminate_bidirectional(const Embedding& e, const TriangleCrossingContext& ctx);
Embedding eliminate_with_side_edge(const Embedding& e, const TriangleCrossingContext& ctx);
Embedding reroute_base(const Embedding& e, const TriangleCrossingContext& ctx);

// Reroutes the needles covered by c along f and {a,c} so the base
// rerouting cannot collide with them.
Embedding preroute_covered_needles(const Embedding& e, const TriangleCrossingContext& ctx);

// Eliminates every crossed triangle: bidirectional contexts first, then
// contexts with a-side edges from either viewpoint, then the rest via
// base rerouting. Output is fan-crossing with the same graph.
std::pair<Embedding, RerouteTrace> make_fan_crossing(const Embedding& e);

// Adds missing {t,u} / {t,v} edges of a config-II instance along the
// prescribed routes. Used internally by fan_planarize with virtual
// edges; exposed for direct use.
Embedding augment_apex(const Embedding& e, const ConfigIIInstance& inst);

// Ejects the left curves left of an eligible straight edge s from the
// base. Requires s uncovered or covered only by the base endpoint on
// s's side.
Embedding reroute_left_curves(const Embedding& e, const ConfigIIInstance& inst);

// Bundles the opposite-kind crossers along a semi-covered edge so the
// instance dissolves.
Embedding reroute_via_semicovered(const Embedding& e, const ConfigIIInstance& inst);

// Removes every config-II instance; bases that cannot be saved are
// replaced by a fresh uncrossed edge in the merged face, keeping vertex
// and edge counts. Input must be fan-crossing.
std::pair<Embedding, RerouteTrace> fan_planarize(const Embedding& e);

} // namespace fancross

#endif
