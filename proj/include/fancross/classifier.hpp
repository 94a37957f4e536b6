#ifndef FANCROSS_CLASSIFIER_HPP
#define FANCROSS_CLASSIFIER_HPP

#include <array>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "fancross/embedding.hpp"

namespace fancross {

// Classes of edges crossing at least one edge of a crossed triangle
// (a,b,c), keyed by the sequence of triangle edges they cross. CW/CCW
// are the triangle-crossing edges themselves; the Left/Right variants
// split them around the chosen pair (e_i, e_j) when both directions
// occur.
enum class CrosserClass {
    Needle1,
    Needle2,
    Needle3,
    AHook,
    CHook,
    AArrow,
    CArrow,
    ASickle,
    CSickle,
    CW,
    CCW,
    CWLeft,
    CWRight,
    CCWLeft,
    CCWRight,
};

const char* crosser_class_name(CrosserClass c);

// A crossed triangle: edges crossing all three edges of the triangle
// (a,b,c), labeled so that every direction-defining crosser runs
// {a,c}, {b,c}, {a,b} from the apex side.
struct TriangleCrossingContext {
    enum class Direction { CW, CCW, Both };

    // Labels a, b, c and the edge ids {a,c}, {b,c}, {a,b}.
    std::array<VertexId, 3> tri = {-1, -1, -1};
    EdgeId edge_ac = -1;
    EdgeId edge_bc = -1;
    EdgeId edge_ab = -1;

    std::vector<EdgeId> tc_edges;
    VertexId apex = -1;
    Direction direction = Direction::CW;
    // Chosen clockwise / counterclockwise pair when direction == Both.
    EdgeId e_i = -1;
    EdgeId e_j = -1;
    bool normalized = false;

    // Every crosser of a triangle edge with its class.
    std::vector<std::pair<EdgeId, CrosserClass>> crossers;

    VertexId a() const { return tri[0]; }
    VertexId b() const { return tri[1]; }
    VertexId c() const { return tri[2]; }
    std::array<EdgeId, 3> triangle_edges() const { return {edge_ac, edge_bc, edge_ab}; }
};

// A base edge crossed from both sides by edges sharing an apex, with
// one base endpoint enclosed by the cycle through the apex.
struct ConfigIIInstance {
    struct Crosser {
        EdgeId edge = -1;
        // Curved crossers only: true when the enclosed base endpoint is
        // the base's tail.
        bool encloses_tail = false;
        bool semi_covered = false;
    };

    EdgeId base = -1;
    VertexId apex = -1;
    std::vector<Crosser> straight;
    std::vector<Crosser> curved;
    bool augmented = false;
};

struct PatternReport {
    int n = 0;
    int m = 0;
    int density_bound = 0; // 5n - 10
    bool adjacency_crossing = false;
    bool fan_crossing = false;
    bool fan_planar = false;
    bool fan_crossing_free = false;
    bool one_planar = false;
    // (host, f, g): f and g cross host and share no endpoint.
    std::vector<std::array<EdgeId, 3>> independent_witnesses;
    std::vector<TriangleCrossingContext> triangle_contexts;
    std::vector<ConfigIIInstance> config_ii;
};

nlohmann::ordered_json report_to_json(const PatternReport& r);

// Edges incident to v that cross target, ordered along target from its
// tail.
std::vector<EdgeId> fan_of(const Embedding& e, VertexId v, EdgeId target);

// Edges crossed at least twice by edges incident to v.
std::vector<EdgeId> cover_of(const Embedding& e, VertexId v);

// All witnesses (host, f, g) of a host edge crossed by two independent
// edges; empty exactly when the embedding is adjacency-crossing.
std::vector<std::array<EdgeId, 3>> independent_crossings(const Embedding& e);

// Finds every crossed triangle by scanning crosser sets, and returns
// normalized contexts with crossers classified.
std::vector<TriangleCrossingContext> triangle_crossings_direct(const Embedding& e);

// The cover characterization: edges e with {e} = cover(x) n cover(y)
// for distinct x, y. Only sound without independent crossings; throws
// EmbeddingError otherwise.
std::vector<EdgeId> triangle_crossings_via_cover(const Embedding& e);

// Classes for every edge crossing a triangle edge of the context.
std::map<EdgeId, CrosserClass> classify_crossers(const TriangleCrossingContext& ctx,
                                                 const Embedding& e);

// One instance per (base, apex) pair where the base is crossed from
// both sides by edges at the apex and the enclosure condition holds.
std::vector<ConfigIIInstance> config_ii_instances(const Embedding& e);

PatternReport verdicts(const Embedding& e);

} // namespace fancross

#endif
