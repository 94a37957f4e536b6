#ifndef FANCROSS_SRC_MAP_UTIL_HPP
#define FANCROSS_SRC_MAP_UTIL_HPP

// Internal helpers shared by the classifier and the rerouter: edge
// pieces as segment sets and two-coloring of faces against a curve.

#include <algorithm>
#include <queue>
#include <set>
#include <vector>

#include "fancross/embedding.hpp"
#include "fancross/planarize.hpp"

namespace fancross::detail {

// Chain positions along an edge: the tail sits at 0, crossing idx at
// idx + 1, the head at |crossings[e]| + 1.
inline int chain_pos_of_vertex(const Embedding& emb, EdgeId e, VertexId v) {
    if (emb.graph.tail(e) == v) return 0;
    return static_cast<int>(emb.crossings[e].size()) + 1;
}

inline int chain_pos_of_crossing(int idx) { return idx + 1; }

// Segments of e strictly between two chain positions.
inline void add_edge_piece(const Planarization& p, EdgeId e, int chain_a, int chain_b,
                           std::set<int>& out) {
    int lo = std::min(chain_a, chain_b);
    int hi = std::max(chain_a, chain_b);
    for (int i = lo; i < hi; ++i) out.insert(p.seg_offset[e] + i);
}

inline void add_whole_edge(const Planarization& p, const Embedding& emb, EdgeId e,
                           std::set<int>& out) {
    int segs = static_cast<int>(emb.crossings[e].size()) + 1;
    for (int i = 0; i < segs; ++i) out.insert(p.seg_offset[e] + i);
}

// Connected components of the face adjacency when the curve's segments
// cannot be stepped over. comp[f] is the component id of face f, ids
// assigned in discovery order from face 0 upward. A simple closed curve
// yields exactly two components.
inline std::vector<int> face_sides(const Planarization& p, const std::set<int>& curve) {
    std::vector<int> comp(p.faces.size(), -1);
    int next = 0;
    for (int start = 0; start < static_cast<int>(p.faces.size()); ++start) {
        if (comp[start] != -1) continue;
        comp[start] = next;
        std::queue<int> q;
        q.push(start);
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            for (int d : p.faces[f]) {
                if (curve.count(Planarization::segment_of(d))) continue;
                int g = p.face_of[Planarization::alpha(d)];
                if (comp[g] == -1) {
                    comp[g] = next;
                    q.push(g);
                }
            }
        }
        ++next;
    }
    return comp;
}

// Component of a vertex that does not lie on the curve; all faces around
// such a vertex agree.
inline int vertex_side(const Planarization& p, const std::vector<int>& comp, int v) {
    return comp[p.face_of[p.vertex_darts[v][0]]];
}

} // namespace fancross::detail

#endif
