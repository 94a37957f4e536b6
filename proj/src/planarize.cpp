#include "fancross/planarize.hpp"

#include <string>

#include "fancross/validate.hpp"

namespace fancross {

int Planarization::chain_vertex(EdgeId e, int i) const {
    int c = static_cast<int>(cross_at[e].size());
    if (i == 0) return dart_from[2 * seg_offset[e]];
    if (i == c + 1) return dart_from[2 * (seg_offset[e] + c) + 1];
    return n_real + cross_at[e][i - 1];
}

int Planarization::leaving_dart(VertexId v, EdgeId e) const {
    int c = static_cast<int>(cross_at[e].size());
    int fwd = 2 * seg_offset[e];
    int bwd = 2 * (seg_offset[e] + c) + 1;
    if (dart_from[fwd] == v) return fwd;
    if (dart_from[bwd] == v) return bwd;
    throw EmbeddingError("leaving_dart: vertex " + std::to_string(v) +
                         " is not an endpoint of edge " + std::to_string(e));
}

int Planarization::cross_dart_ahead(EdgeId e, int idx) const {
    return 2 * (seg_offset[e] + idx + 1);
}

int Planarization::cross_dart_back(EdgeId e, int idx) const {
    return 2 * (seg_offset[e] + idx) + 1;
}

int Planarization::dart_for(const OuterRef& r) const {
    return 2 * (seg_offset[r.edge] + r.segment) + (r.reversed ? 1 : 0);
}

OuterRef Planarization::ref_for(int d) const {
    int s = segment_of(d);
    EdgeId e = seg_edge[s];
    return OuterRef{e, s - seg_offset[e], is_reversed(d)};
}

Planarization planarize_unchecked(const Embedding& emb) {
    const Graph& g = emb.graph;
    Planarization p;
    p.n_real = g.n;

    // Promote each crossing pair to one vertex; the smaller edge id owns
    // the stored sign.
    p.cross_at.assign(g.m(), {});
    for (EdgeId e = 0; e < g.m(); ++e)
        p.cross_at[e].assign(emb.crossings[e].size(), -1);
    for (EdgeId e = 0; e < g.m(); ++e) {
        for (int i = 0; i < static_cast<int>(emb.crossings[e].size()); ++i) {
            EdgeId f = emb.crossings[e][i].other;
            if (e < f) {
                int idx_f = emb.crossing_index(f, e);
                int k = static_cast<int>(p.cross_points.size());
                p.cross_points.push_back({e, f, i, idx_f, emb.crossings[e][i].sign});
                p.cross_at[e][i] = k;
                p.cross_at[f][idx_f] = k;
            }
        }
    }
    p.n_cross = static_cast<int>(p.cross_points.size());

    p.seg_offset.assign(g.m(), 0);
    for (EdgeId e = 0; e < g.m(); ++e) {
        p.seg_offset[e] = p.n_segments;
        p.n_segments += static_cast<int>(emb.crossings[e].size()) + 1;
    }
    p.seg_edge.assign(p.n_segments, -1);
    for (EdgeId e = 0; e < g.m(); ++e) {
        int c = static_cast<int>(emb.crossings[e].size());
        for (int i = 0; i <= c; ++i) p.seg_edge[p.seg_offset[e] + i] = e;
    }

    p.dart_from.assign(2 * p.n_segments, -1);
    for (EdgeId e = 0; e < g.m(); ++e) {
        int c = static_cast<int>(emb.crossings[e].size());
        int prev = g.tail(e);
        for (int i = 0; i <= c; ++i) {
            int s = p.seg_offset[e] + i;
            int next = (i == c) ? g.head(e) : p.n_real + p.cross_at[e][i];
            p.dart_from[2 * s] = prev;
            p.dart_from[2 * s + 1] = next;
            prev = next;
        }
    }

    p.vertex_darts.assign(p.n_vertices(), {});
    for (VertexId v = 0; v < g.n; ++v) {
        auto& cycle = p.vertex_darts[v];
        cycle.reserve(emb.rotations[v].size());
        for (EdgeId e : emb.rotations[v]) cycle.push_back(p.leaving_dart(v, e));
    }
    for (int k = 0; k < p.n_cross; ++k) {
        const CrossingPoint& cp = p.cross_points[k];
        int ea = p.cross_dart_ahead(cp.e, cp.idx_e);
        int eb = p.cross_dart_back(cp.e, cp.idx_e);
        int fa = p.cross_dart_ahead(cp.f, cp.idx_f);
        int fb = p.cross_dart_back(cp.f, cp.idx_f);
        // f passing e left-to-right puts f's tail side on e's left, so
        // counterclockwise from e-ahead the next dart is f-back.
        if (cp.sign == Sign::LR)
            p.vertex_darts[p.n_real + k] = {ea, fb, eb, fa};
        else
            p.vertex_darts[p.n_real + k] = {ea, fa, eb, fb};
    }

    p.sigma_next.assign(p.n_darts(), -1);
    p.sigma_prev.assign(p.n_darts(), -1);
    for (auto& cycle : p.vertex_darts) {
        int deg = static_cast<int>(cycle.size());
        for (int i = 0; i < deg; ++i) {
            int d = cycle[i];
            int dn = cycle[(i + 1) % deg];
            p.sigma_next[d] = dn;
            p.sigma_prev[dn] = d;
        }
    }

    p.face_of.assign(p.n_darts(), -1);
    for (int d0 = 0; d0 < p.n_darts(); ++d0) {
        if (p.face_of[d0] >= 0) continue;
        int id = static_cast<int>(p.faces.size());
        std::vector<int> cycle;
        int d = d0;
        do {
            p.face_of[d] = id;
            cycle.push_back(d);
            d = p.face_next(d);
        } while (d != d0);
        p.faces.push_back(std::move(cycle));
    }

    p.outer_face = p.face_of[p.dart_for(emb.outer)];
    return p;
}

Planarization planarize(const Embedding& e) {
    ValidationReport report = validate(e);
    if (!report.ok())
        throw EmbeddingError("planarize: invalid embedding: " + report.summary());
    return planarize_unchecked(e);
}

} // namespace fancross
