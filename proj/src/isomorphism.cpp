#include "fancross/isomorphism.hpp"

#include <algorithm>

#include "fancross/planarize.hpp"

namespace fancross {

Embedding mirror(const Embedding& e) {
    Embedding out = e;
    for (auto& rot : out.rotations) std::reverse(rot.begin(), rot.end());
    for (auto& list : out.crossings)
        for (auto& rec : list) rec.sign = flip(rec.sign);
    out.outer.reversed = !out.outer.reversed;
    return out;
}

Embedding relabel_vertices(const Embedding& e, const std::vector<VertexId>& perm) {
    const Graph& g = e.graph;
    if (static_cast<int>(perm.size()) != g.n)
        throw EmbeddingError("relabel_vertices: permutation size mismatch");
    Embedding out = e;
    out.graph.edges.clear();
    out.graph.edges.reserve(g.m());
    std::vector<bool> flipped(g.m(), false);
    for (EdgeId id = 0; id < g.m(); ++id) {
        VertexId u = perm[g.tail(id)];
        VertexId v = perm[g.head(id)];
        if (u > v) {
            std::swap(u, v);
            flipped[id] = true;
        }
        out.graph.edges.emplace_back(u, v);
    }
    // An edge whose orientation turned around sees its own crossings in
    // reverse order with flipped signs, and every partner's view of it
    // flips as well.
    for (EdgeId id = 0; id < g.m(); ++id) {
        if (flipped[id]) {
            std::reverse(out.crossings[id].begin(), out.crossings[id].end());
            for (auto& rec : out.crossings[id]) rec.sign = flip(rec.sign);
        }
    }
    for (auto& list : out.crossings)
        for (auto& rec : list)
            if (flipped[rec.other]) rec.sign = flip(rec.sign);
    // Signs flipped twice cancel when both edges turned around; the two
    // loops above already compose to that.
    std::vector<std::vector<EdgeId>> rot(g.n);
    for (VertexId v = 0; v < g.n; ++v) rot[perm[v]] = e.rotations[v];
    out.rotations = std::move(rot);
    if (flipped[out.outer.edge]) {
        int c = static_cast<int>(out.crossings[out.outer.edge].size());
        out.outer.segment = c - out.outer.segment;
        out.outer.reversed = !out.outer.reversed;
    }
    return out;
}

namespace {

// Breadth-first canonical labeling of the dart set from one root in one
// orientation. Emits, per dart in label order, the labels of its
// rotation successor and its reversal plus a real/crossing tag of the
// vertex it leaves. The minimum word over all roots and both
// orientations is a complete sphere-map invariant.
std::vector<int> trace_code(const Planarization& p, int root, bool reflected) {
    const int n_darts = p.n_darts();
    std::vector<int> label(n_darts, -1);
    std::vector<int> order;
    order.reserve(n_darts);
    auto visit = [&](int d) {
        if (label[d] < 0) {
            label[d] = static_cast<int>(order.size());
            order.push_back(d);
        }
    };
    visit(root);
    std::vector<int> code;
    code.reserve(3 * n_darts);
    for (size_t i = 0; i < order.size(); ++i) {
        int d = order[i];
        int s = reflected ? p.sigma_prev[d] : p.sigma_next[d];
        int a = Planarization::alpha(d);
        visit(s);
        visit(a);
        code.push_back(label[s]);
        code.push_back(label[a]);
        code.push_back(p.is_cross_vertex(p.dart_from[d]) ? 1 : 0);
    }
    return code;
}

} // namespace

std::vector<int> canonical_map_code(const Embedding& e) {
    Planarization p = planarize_unchecked(e);
    std::vector<int> best;
    for (int reflected = 0; reflected < 2; ++reflected) {
        for (int root = 0; root < p.n_darts(); ++root) {
            std::vector<int> code = trace_code(p, root, reflected != 0);
            if (best.empty() || code < best) best = std::move(code);
        }
    }
    return best;
}

bool map_isomorphic(const Embedding& a, const Embedding& b) {
    if (a.graph.n != b.graph.n || a.graph.m() != b.graph.m()) return false;
    if (a.crossing_count() != b.crossing_count()) return false;
    return canonical_map_code(a) == canonical_map_code(b);
}

} // namespace fancross
