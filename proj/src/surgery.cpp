#include "fancross/surgery.hpp"

#include <algorithm>
#include <string>

#include "fancross/planarize.hpp"
#include "fancross/validate.hpp"

namespace fancross {

namespace {

std::string edge_str(const Graph& g, EdgeId e) {
    return "edge " + std::to_string(e) + " {" + std::to_string(g.tail(e)) + "," +
           std::to_string(g.head(e)) + "}";
}

// Deletes without validating the result; induced_embedding walks
// through intentionally disconnected intermediates.
Embedding delete_edge_impl(const Embedding& e, EdgeId id) {
    const Graph& g = e.graph;
    Embedding out;
    out.graph.n = g.n;
    std::vector<EdgeId> edge_map(g.m(), -1);
    for (EdgeId j = 0; j < g.m(); ++j) {
        if (j == id) continue;
        edge_map[j] = static_cast<int>(out.graph.edges.size());
        out.graph.edges.push_back(g.edges[j]);
    }
    out.crossings.reserve(g.m() - 1);
    for (EdgeId j = 0; j < g.m(); ++j) {
        if (j == id) continue;
        std::vector<CrossingRecord> list;
        for (auto& rec : e.crossings[j])
            if (rec.other != id) list.push_back({edge_map[rec.other], rec.sign});
        out.crossings.push_back(std::move(list));
    }
    out.rotations.assign(g.n, {});
    for (VertexId v = 0; v < g.n; ++v)
        for (EdgeId j : e.rotations[v])
            if (j != id) out.rotations[v].push_back(edge_map[j]);
    out.outer = map_outer_ref(e, out, edge_map, {id});
    return out;
}

} // namespace

OuterRef map_outer_ref(const Embedding& before, const Embedding& after,
                       const std::vector<EdgeId>& edge_map,
                       const std::set<EdgeId>& changed) {
    Planarization p = planarize_unchecked(before);
    int d0 = p.dart_for(before.outer);
    const auto& cycle = p.faces[p.face_of[d0]];
    int len = static_cast<int>(cycle.size());
    int start = 0;
    while (cycle[start] != d0) ++start;
    for (int t = 0; t < len; ++t) {
        int d = cycle[(start + t) % len];
        EdgeId h_old = p.edge_of(d);
        if (changed.count(h_old)) continue;
        EdgeId h_new = edge_map[h_old];
        if (h_new < 0) continue;
        bool rev = Planarization::is_reversed(d);
        int origin = p.dart_from[d];
        if (!p.is_cross_vertex(origin)) {
            // Dart leaves a real endpoint: first segment forward or last
            // segment backward, recomputed against the new crossing count.
            int c_new = static_cast<int>(after.crossings[h_new].size());
            return rev ? OuterRef{h_new, c_new, true} : OuterRef{h_new, 0, false};
        }
        const CrossingPoint& cp = p.cross_points[p.cross_id(origin)];
        EdgeId g_old = (cp.e == h_old) ? cp.f : cp.e;
        if (changed.count(g_old)) continue;
        EdgeId g_new = edge_map[g_old];
        if (g_new < 0) continue;
        int idx_new = after.crossing_index(h_new, g_new);
        if (idx_new < 0) continue;
        return rev ? OuterRef{h_new, idx_new, true} : OuterRef{h_new, idx_new + 1, false};
    }
    throw SurgeryError("outer face could not be re-anchored after surgery");
}

Embedding delete_edge(const Embedding& e, EdgeId id) {
    if (!e.graph.valid_edge(id))
        throw EmbeddingError("delete_edge: unknown edge " + std::to_string(id));
    Embedding out = delete_edge_impl(e, id);
    ValidationReport rep = validate(out);
    if (!rep.ok())
        throw SurgeryError("delete_edge: result invalid: " + rep.summary());
    return out;
}

Embedding insert_edge_in_face(const Embedding& e, VertexId u, VertexId v, int face,
                              int slot_u, int slot_v) {
    const Graph& g = e.graph;
    if (!g.valid_vertex(u) || !g.valid_vertex(v) || u == v)
        throw EmbeddingError("insert_edge_in_face: bad endpoints");
    if (g.has_edge(u, v))
        throw EmbeddingError("insert_edge_in_face: {" + std::to_string(u) + "," +
                             std::to_string(v) + "} already present");
    Planarization p = planarize_unchecked(e);
    if (face < 0 || face >= static_cast<int>(p.faces.size()))
        throw EmbeddingError("insert_edge_in_face: no face " + std::to_string(face));

    auto check_slot = [&](VertexId w, int slot) {
        int deg = static_cast<int>(e.rotations[w].size());
        if (slot < 0 || slot > deg)
            throw EmbeddingError("insert_edge_in_face: slot " + std::to_string(slot) +
                                 " out of range at vertex " + std::to_string(w));
        // The corner opened by the slot is the one swept from the
        // predecessor entry; it must bound the target face.
        EdgeId pred = e.rotations[w][(slot - 1 + deg) % deg];
        if (p.face_of[p.leaving_dart(w, pred)] != face)
            throw EmbeddingError("insert_edge_in_face: vertex " + std::to_string(w) +
                                 " slot " + std::to_string(slot) +
                                 " does not open into face " + std::to_string(face));
    };
    check_slot(u, slot_u);
    check_slot(v, slot_v);

    Embedding out = e;
    EdgeId id = out.graph.add_edge(u, v);
    out.crossings.emplace_back();
    out.rotations[u].insert(out.rotations[u].begin() + slot_u, id);
    out.rotations[v].insert(out.rotations[v].begin() + slot_v, id);

    ValidationReport rep = validate(out);
    if (!rep.ok())
        throw SurgeryError("insert_edge_in_face: result invalid: " + rep.summary());
    return out;
}

namespace {

// Walk coordinate of an anchor along a guide with c crossings: -1 at
// the tail, crossing index in the middle, c at the head.
int anchor_ord(const Graph& g, const Embedding& e, EdgeId guide, const Anchor& a,
               const char* what) {
    int c = static_cast<int>(e.crossings[guide].size());
    if (a.is_vertex()) {
        if (a.vertex == g.tail(guide)) return -1;
        if (a.vertex == g.head(guide)) return c;
        throw SurgeryError(std::string(what) + ": vertex " + std::to_string(a.vertex) +
                           " is not an endpoint of guide " + std::to_string(guide));
    }
    if (a.cross_index < 0 || a.cross_index >= c)
        throw SurgeryError(std::string(what) + ": crossing index " +
                           std::to_string(a.cross_index) + " out of range on guide " +
                           std::to_string(guide));
    return a.cross_index;
}

// Identity of the point an anchor denotes: a vertex, or an unordered
// edge pair for a crossing.
std::pair<int, int> anchor_point(const Embedding& e, EdgeId guide, const Anchor& a) {
    if (a.is_vertex()) return {-1, a.vertex};
    EdgeId other = e.crossings[guide][a.cross_index].other;
    return {std::min(guide, other), std::max(guide, other)};
}

} // namespace

Embedding reroute_along(const Embedding& e, EdgeId x,
                        const std::vector<RouteDirective>& route) {
    const Graph& g = e.graph;
    if (!g.valid_edge(x))
        throw EmbeddingError("reroute_along: unknown edge " + std::to_string(x));
    VertexId xt = g.tail(x), xh = g.head(x);

    struct NewCross {
        EdgeId h;
        Sign sign_on_h; // how x passes h
        bool by_guide;
        EdgeId guide;      // by_guide: insert relative to h's crossing with guide
        bool before_guide; // before or after that crossing in h's list
        int snap_slot;     // !by_guide: slot in h's original list
    };
    std::vector<NewCross> acquired;

    for (size_t i = 0; i < route.size(); ++i) {
        const RouteDirective& d = route[i];
        if (!g.valid_edge(d.guide))
            throw SurgeryError("reroute_along: directive " + std::to_string(i) +
                               " names unknown guide " + std::to_string(d.guide));
        if (d.guide == x)
            throw SurgeryError("reroute_along: directive " + std::to_string(i) +
                               " uses the rerouted edge as its own guide");
        if (d.kind == RouteDirective::Kind::Follow) {
            int from = anchor_ord(g, e, d.guide, d.from, "reroute_along");
            int to = anchor_ord(g, e, d.guide, d.to, "reroute_along");
            if (from == to)
                throw SurgeryError("reroute_along: empty follow span on guide " +
                                   std::to_string(d.guide));
            bool fwd = from < to;
            int step = fwd ? 1 : -1;
            for (int j = from + step; j != to; j += step) {
                const CrossingRecord& rec = e.crossings[d.guide][j];
                EdgeId h = rec.other;
                if (h == x) continue; // the old course is gone from the snapshot
                if (g.adjacent(h, x))
                    throw SurgeryError("reroute_along: route would cross " +
                                       edge_str(g, h) + " adjacent to " + edge_str(g, x));
                bool left = d.side == RouteDirective::Side::Left;
                Sign sign_on_h = fwd ? flip(rec.sign) : rec.sign;
                bool before = (rec.sign == Sign::LR) == left;
                acquired.push_back({h, sign_on_h, true, d.guide, before, -1});
            }
        } else {
            int c = static_cast<int>(e.crossings[d.guide].size());
            if (d.pierce_pos < 0 || d.pierce_pos > c)
                throw SurgeryError("reroute_along: pierce position " +
                                   std::to_string(d.pierce_pos) + " out of range on guide " +
                                   std::to_string(d.guide));
            if (g.adjacent(d.guide, x))
                throw SurgeryError("reroute_along: route would cross " +
                                   edge_str(g, d.guide) + " adjacent to " + edge_str(g, x));
            acquired.push_back({d.guide, d.pierce_sign, false, -1, false, d.pierce_pos});
        }
    }

    // Structural contiguity where it is determinable. Full realizability
    // is enforced by validating the result.
    for (size_t i = 0; i + 1 < route.size(); ++i) {
        const RouteDirective& a = route[i];
        const RouteDirective& b = route[i + 1];
        if (a.kind == RouteDirective::Kind::Follow &&
            b.kind == RouteDirective::Kind::Follow) {
            if (anchor_point(e, a.guide, a.to) != anchor_point(e, b.guide, b.from))
                throw SurgeryError("reroute_along: follow " + std::to_string(i + 1) +
                                   " does not start where the previous one ends");
        } else if (a.kind == RouteDirective::Kind::Follow &&
                   b.kind == RouteDirective::Kind::Pierce) {
            if (b.guide == a.guide) {
                int from = anchor_ord(g, e, a.guide, a.from, "reroute_along");
                int to = anchor_ord(g, e, a.guide, a.to, "reroute_along");
                int want = from < to ? to + 1 : to;
                if (b.pierce_pos != want)
                    throw SurgeryError("reroute_along: pierce at position " +
                                       std::to_string(b.pierce_pos) +
                                       " is not adjacent to the preceding follow");
            }
        }
    }
    if (!route.empty()) {
        const RouteDirective& first = route.front();
        if (first.kind == RouteDirective::Kind::Follow &&
            !(first.from == Anchor::at(xt)))
            throw SurgeryError("reroute_along: route does not start at the tail of " +
                               edge_str(g, x));
        const RouteDirective& last = route.back();
        if (last.kind == RouteDirective::Kind::Follow && !(last.to == Anchor::at(xh)))
            throw SurgeryError("reroute_along: route does not end at the head of " +
                               edge_str(g, x));
    }

    for (size_t i = 0; i < acquired.size(); ++i)
        for (size_t j = i + 1; j < acquired.size(); ++j)
            if (acquired[i].h == acquired[j].h)
                throw SurgeryError("reroute_along: route crosses " +
                                   edge_str(g, acquired[i].h) + " twice");

    Embedding out = e;
    for (auto& rec : e.crossings[x]) {
        auto& list = out.crossings[rec.other];
        list.erase(std::remove_if(list.begin(), list.end(),
                                  [&](const CrossingRecord& r) { return r.other == x; }),
                   list.end());
    }
    out.crossings[x].clear();

    for (const NewCross& nc : acquired) {
        out.crossings[x].push_back({nc.h, flip(nc.sign_on_h)});
        auto& list = out.crossings[nc.h];
        int ins;
        if (nc.by_guide) {
            int at = -1;
            for (int k = 0; k < static_cast<int>(list.size()); ++k)
                if (list[k].other == nc.guide) at = k;
            if (at < 0)
                throw SurgeryError("reroute_along: internal anchor lookup failed");
            ins = nc.before_guide ? at : at + 1;
        } else {
            ins = 0;
            for (int k = 0; k < nc.snap_slot; ++k)
                if (e.crossings[nc.h][k].other != x) ++ins;
        }
        list.insert(list.begin() + ins, {x, nc.sign_on_h});
    }

    // Endpoint slots. A bounding Follow parks the edge right next to its
    // guide on the named side; otherwise the old slot is kept.
    auto reinsert = [&](VertexId w, bool guide_slot, EdgeId guide,
                        RouteDirective::Side side) {
        auto& rot = out.rotations[w];
        int old_pos = 0;
        {
            auto& orig = e.rotations[w];
            int deg = static_cast<int>(orig.size());
            int at = 0;
            while (orig[at] != x) ++at;
            EdgeId pred = orig[(at - 1 + deg) % deg];
            rot.erase(std::find(rot.begin(), rot.end(), x));
            if (!rot.empty()) {
                if (pred == x) {
                    old_pos = 0;
                } else {
                    int pp = 0;
                    while (rot[pp] != pred) ++pp;
                    old_pos = pp + 1;
                }
            }
        }
        if (rot.empty()) {
            rot.push_back(x);
            return;
        }
        int pos;
        if (guide_slot) {
            int gp = 0;
            while (rot[gp] != guide) ++gp;
            bool next_ccw = (w == g.tail(guide)) == (side == RouteDirective::Side::Left);
            pos = next_ccw ? gp + 1 : gp;
        } else {
            pos = old_pos;
        }
        rot.insert(rot.begin() + pos, x);
    };
    bool tail_guided = !route.empty() &&
                       route.front().kind == RouteDirective::Kind::Follow &&
                       route.front().from == Anchor::at(xt);
    bool head_guided = !route.empty() &&
                       route.back().kind == RouteDirective::Kind::Follow &&
                       route.back().to == Anchor::at(xh);
    reinsert(xt, tail_guided, tail_guided ? route.front().guide : -1,
             tail_guided ? route.front().side : RouteDirective::Side::Left);
    reinsert(xh, head_guided, head_guided ? route.back().guide : -1,
             head_guided ? route.back().side : RouteDirective::Side::Left);

    std::vector<EdgeId> identity(g.m());
    for (EdgeId j = 0; j < g.m(); ++j) identity[j] = j;
    out.outer = map_outer_ref(e, out, identity, {x});

    ValidationReport rep = validate(out);
    if (!rep.ok())
        throw SurgeryError("reroute_along: result invalid: " + rep.summary());
    return out;
}

Embedding induced_embedding(const Embedding& e, const std::vector<VertexId>& keep) {
    const Graph& g = e.graph;
    std::vector<int> pos(g.n, -1);
    for (size_t i = 0; i < keep.size(); ++i) {
        if (!g.valid_vertex(keep[i]) || pos[keep[i]] >= 0)
            throw EmbeddingError("induced_embedding: bad vertex list");
        pos[keep[i]] = static_cast<int>(i);
    }
    Embedding cur = e;
    for (EdgeId id = g.m() - 1; id >= 0; --id)
        if (pos[g.tail(id)] < 0 || pos[g.head(id)] < 0) cur = delete_edge_impl(cur, id);

    Embedding out;
    out.graph.n = static_cast<int>(keep.size());
    for (auto& [u, v] : cur.graph.edges) {
        int nu = pos[u], nv = pos[v];
        if (nu > nv) std::swap(nu, nv);
        out.graph.edges.emplace_back(nu, nv);
    }
    // Relabeling by keep order may turn edges around.
    std::vector<bool> flipped(cur.graph.m(), false);
    for (EdgeId id = 0; id < cur.graph.m(); ++id)
        flipped[id] = pos[cur.graph.tail(id)] > pos[cur.graph.head(id)];
    out.crossings = cur.crossings;
    for (EdgeId id = 0; id < cur.graph.m(); ++id) {
        if (flipped[id]) {
            std::reverse(out.crossings[id].begin(), out.crossings[id].end());
            for (auto& rec : out.crossings[id]) rec.sign = flip(rec.sign);
        }
    }
    for (auto& list : out.crossings)
        for (auto& rec : list)
            if (flipped[rec.other]) rec.sign = flip(rec.sign);
    out.rotations.assign(out.graph.n, {});
    for (VertexId v : keep) out.rotations[pos[v]] = cur.rotations[v];
    // Outer is canonicalized; callers use this for sphere-level checks.
    out.outer = OuterRef{0, 0, false};

    ValidationReport rep = validate(out);
    if (!rep.ok())
        throw SurgeryError("induced_embedding: result invalid: " + rep.summary());
    return out;
}

} // namespace fancross
