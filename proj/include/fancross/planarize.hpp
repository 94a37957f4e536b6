#ifndef FANCROSS_PLANARIZE_HPP
#define FANCROSS_PLANARIZE_HPP

#include <vector>

#include "fancross/embedding.hpp"

namespace fancross {

// One crossing promoted to a degree-4 vertex. e < f; idx_e is the
// crossing's position in crossings[e], likewise idx_f. sign is the sign
// recorded on e's side (how f passes over e).
struct CrossingPoint {
    EdgeId e = -1;
    EdgeId f = -1;
    int idx_e = -1;
    int idx_f = -1;
    Sign sign = Sign::LR;
};

// The plane map derived from an embedding: crossings become vertices,
// edges split into segments, each segment carries two darts.
//
// Ids. Vertices: 0..n_real-1 are the graph's vertices, n_real+k is
// crossing point k. Segments: edge e owns seg_offset[e] .. seg_offset[e]
// + |crossings[e]|, numbered from the tail. Darts: segment s has forward
// dart 2s (tail-to-head sense) and backward dart 2s+1; a dart belongs to
// (leaves) the segment endpoint it points away from.
//
// Faces are traced so that every face lies to the LEFT of each dart on
// its boundary; with counterclockwise rotations the successor of d along
// its face is sigma_prev[alpha(d)].
struct Planarization {
    int n_real = 0;
    int n_cross = 0;
    std::vector<CrossingPoint> cross_points;
    // Per edge, per crossing index, the crossing point id.
    std::vector<std::vector<int>> cross_at;
    std::vector<int> seg_offset;
    std::vector<EdgeId> seg_edge;
    int n_segments = 0;

    std::vector<int> dart_from;
    std::vector<int> sigma_next;
    std::vector<int> sigma_prev;
    // Counterclockwise dart cycle at every vertex, real and crossing.
    std::vector<std::vector<int>> vertex_darts;

    std::vector<std::vector<int>> faces;
    std::vector<int> face_of;
    int outer_face = -1;

    int n_vertices() const { return n_real + n_cross; }
    int n_darts() const { return 2 * n_segments; }

    static int alpha(int d) { return d ^ 1; }
    static int segment_of(int d) { return d >> 1; }
    static bool is_reversed(int d) { return d & 1; }

    EdgeId edge_of(int d) const { return seg_edge[segment_of(d)]; }
    int dart_to(int d) const { return dart_from[alpha(d)]; }
    int face_next(int d) const { return sigma_prev[alpha(d)]; }
    int face_prev(int d) const { return alpha(sigma_next[d]); }

    bool is_cross_vertex(int v) const { return v >= n_real; }
    // Crossing point id of a crossing vertex.
    int cross_id(int v) const { return v - n_real; }
    // Vertex id of crossing idx (position in crossings[e]) on edge e.
    int cross_vertex(EdgeId e, int idx) const { return n_real + cross_at[e][idx]; }

    // Endpoint i of edge e's segment chain, i in 0..|crossings[e]|+1.
    int chain_vertex(EdgeId e, int i) const;

    // Dart leaving a real vertex along edge e.
    int leaving_dart(VertexId v, EdgeId e) const;
    // Darts of edge e at crossing index idx: the one continuing toward
    // the head and the one pointing back toward the tail.
    int cross_dart_ahead(EdgeId e, int idx) const;
    int cross_dart_back(EdgeId e, int idx) const;

    int dart_for(const OuterRef& r) const;
    // Inverse of dart_for.
    OuterRef ref_for(int d) const;

    // Euler characteristic V - E + F of the traced map.
    int euler() const { return n_vertices() - n_segments + static_cast<int>(faces.size()); }
};

// Builds the map without validating the embedding first. The embedding
// must be structurally sound (sizes, reciprocity, index ranges); this is
// the backend validate() itself uses for the face-count check.
Planarization planarize_unchecked(const Embedding& e);

// Validates, then builds. Throws EmbeddingError carrying the validation
// report when the embedding is invalid.
Planarization planarize(const Embedding& e);

} // namespace fancross

#endif
