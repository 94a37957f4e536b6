#include "fancross/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>

#include "fancross/isomorphism.hpp"
#include "fancross/planarize.hpp"
#include "fancross/validate.hpp"
#include "enum_engine.hpp"

namespace fancross {

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > kSat / b) return kSat;
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > kSat - b ? kSat : a + b;
}

} // namespace

std::uint64_t raw_candidate_count(const Graph& g, int max_crossings) {
    std::uint64_t pairs = 0;
    for (EdgeId e = 0; e < g.m(); ++e)
        for (EdgeId f = e + 1; f < g.m(); ++f)
            if (!g.adjacent(e, f)) ++pairs;

    std::uint64_t rot = 1;
    for (VertexId v = 0; v < g.n; ++v) {
        std::uint64_t d = 0;
        for (EdgeId e = 0; e < g.m(); ++e)
            if (g.incident(e, v)) ++d;
        for (std::uint64_t i = 2; i + 1 <= d; ++i) rot = sat_mul(rot, i);
    }

    std::uint64_t total = 0;
    std::uint64_t choose = 1; // C(pairs, k), updated incrementally
    std::uint64_t fact = 1;   // k!
    for (int k = 0; k <= max_crossings; ++k) {
        if (k > 0) {
            if (static_cast<std::uint64_t>(k) > pairs) break;
            choose = sat_mul(choose, pairs - k + 1) / k;
            fact = sat_mul(fact, static_cast<std::uint64_t>(k));
        }
        std::uint64_t term = sat_mul(choose, fact);
        term = sat_mul(term, std::uint64_t{1} << std::min(k, 63));
        term = sat_mul(term, rot);
        total = sat_add(total, term);
        if (total == kSat) break;
    }
    return total;
}

namespace detail {

std::vector<EdgeId> connected_edge_order(const Graph& g) {
    std::vector<EdgeId> order;
    std::vector<bool> placed(g.m(), false), touched(g.n, false);
    for (int step = 0; step < g.m(); ++step) {
        EdgeId pick = -1;
        for (EdgeId e = 0; e < g.m(); ++e) {
            if (placed[e]) continue;
            if (step == 0 || touched[g.tail(e)] || touched[g.head(e)]) {
                pick = e;
                break;
            }
        }
        if (pick < 0) throw EnumError("graph is disconnected");
        placed[pick] = true;
        touched[g.tail(pick)] = true;
        touched[g.head(pick)] = true;
        order.push_back(pick);
    }
    return order;
}

namespace {

// One crossing acquired by the route: sub-graph edge h crossed in its
// local segment seg (position in h's current crossing list), passing
// h with sign_on_h in the new edge's own tail-to-head direction.
struct RouteCross {
    EdgeId h;
    int seg;
    Sign sign_on_h;
};

struct Search {
    const Graph& full;
    const std::vector<EdgeId>& remaining;
    int max_crossings;
    const std::function<bool(const Embedding&)>& emit;
    const std::function<bool(const Embedding&)>& prune;
    std::vector<EdgeId> sub_to_full; // sub edge id -> full edge id

    bool finish(const Embedding& cur) {
        Embedding out;
        out.graph.n = full.n;
        out.graph.edges = full.edges;
        out.crossings.assign(full.m(), {});
        std::vector<EdgeId> to_full = sub_to_full;
        for (EdgeId i = 0; i < cur.graph.m(); ++i) {
            auto list = cur.crossings[i];
            for (auto& rec : list) rec.other = to_full[rec.other];
            out.crossings[to_full[i]] = std::move(list);
        }
        out.rotations.assign(full.n, {});
        for (VertexId v = 0; v < full.n; ++v)
            for (EdgeId i : cur.rotations[v]) out.rotations[v].push_back(to_full[i]);
        out.outer = OuterRef{0, 0, false};
        return emit(out);
    }

    bool descend(const Embedding& cur, int used, size_t next) {
        if (prune && !prune(cur)) return true;
        if (next == remaining.size()) return finish(cur);
        return insert_edge(cur, used, next);
    }

    bool insert_edge(const Embedding& cur, int used, size_t next) {
        EdgeId fx = remaining[next];
        VertexId u = full.tail(fx), v = full.head(fx);

        if (cur.graph.m() == 0) {
            // Seed: a lone arc on the sphere, no choices to make.
            Embedding one = cur;
            one.graph.add_edge(u, v);
            one.crossings.emplace_back();
            one.rotations[u].push_back(0);
            one.rotations[v].push_back(0);
            one.outer = OuterRef{0, 0, false};
            sub_to_full.push_back(fx);
            bool go = descend(one, used, next + 1);
            sub_to_full.pop_back();
            return go;
        }

        bool u_placed = !cur.rotations[u].empty();
        bool v_placed = !cur.rotations[v].empty();
        if (!u_placed && !v_placed)
            throw EnumError("edge insertion order leaves an edge unattached");
        // Walk from the tail when it is placed so the walk direction is
        // the edge's own orientation; otherwise walk backwards from the
        // head. Enumerating from one fixed end visits each curve once.
        VertexId w0 = u_placed ? u : v;
        VertexId w1 = u_placed ? v : u;
        bool fwd = w0 == u;

        Planarization p = planarize_unchecked(cur);
        std::vector<RouteCross> route;
        std::vector<bool> crossed(cur.graph.m(), false);

        // Index of every dart within its face cycle, for boundary
        // positions: around a face of length L, junction corners sit at
        // even positions 2i (before arc i) and arc interiors at 2i+1.
        std::vector<int> idx_in_face(2 * p.n_segments);
        for (const auto& cyc : p.faces)
            for (int k = 0; k < static_cast<int>(cyc.size()); ++k)
                idx_in_face[cyc[k]] = k;

        // Corner j of a vertex opens between rotation entries j and j+1
        // and lies in the face left of the dart leaving along entry j;
        // that dart's face arc starts at the corner's junction. An edge
        // inserted there takes rotation slot j+1.
        auto corner_dart = [&](VertexId w, int j) {
            return p.leaving_dart(w, cur.rotations[w][j]);
        };

        // The route's own passages through a face are chords of that
        // disk; they may not interleave, or the new curve would cross
        // itself. All endpoint positions are distinct by simplicity.
        std::map<int, std::vector<std::pair<int, int>>> chords;
        auto chord_ok = [&](int face, int a, int b) {
            auto it = chords.find(face);
            if (it == chords.end()) return true;
            int len = 2 * static_cast<int>(p.faces[face].size());
            auto inside = [&](int x) { return ((x - a + len) % len) < ((b - a + len) % len); };
            for (auto& [c, d] : it->second)
                if (inside(c) != inside(d)) return false;
            return true;
        };

        auto apply = [&](int slot0, int slot1, int face1) -> bool {
            Embedding nxt = cur;
            EdgeId x = nxt.graph.add_edge(u, v);
            std::vector<CrossingRecord> own;
            for (const RouteCross& rc : route) own.push_back({rc.h, flip(rc.sign_on_h)});
            if (!fwd) std::reverse(own.begin(), own.end());
            nxt.crossings.push_back(std::move(own));
            for (const RouteCross& rc : route)
                nxt.crossings[rc.h].insert(nxt.crossings[rc.h].begin() + rc.seg,
                                           {x, rc.sign_on_h});
            nxt.rotations[w0].insert(nxt.rotations[w0].begin() + slot0, x);
            if (slot1 >= 0)
                nxt.rotations[w1].insert(nxt.rotations[w1].begin() + slot1, x);
            else
                nxt.rotations[w1].push_back(x);
            (void)face1;
            sub_to_full.push_back(fx);
            bool go = descend(nxt, used + static_cast<int>(route.size()), next + 1);
            sub_to_full.pop_back();
            return go;
        };

        // Depth-first over faces; pos is where this passage entered the
        // current face's boundary. Ending options come before further
        // crossings so shorter routes are explored first.
        std::function<bool(int, int, int)> walk = [&](int face, int pos, int slot0) -> bool {
            if (!cur.rotations[w1].empty()) {
                int deg = static_cast<int>(cur.rotations[w1].size());
                for (int j = 0; j < deg; ++j) {
                    int d1 = corner_dart(w1, j);
                    if (p.face_of[d1] != face) continue;
                    if (!chord_ok(face, pos, 2 * idx_in_face[d1])) continue;
                    if (!apply(slot0, j + 1, face)) return false;
                }
            } else {
                // The landing cell inside the face is forced: the final
                // arc starts at pos and cannot cross earlier passages.
                if (!apply(slot0, -1, face)) return false;
            }
            if (used + static_cast<int>(route.size()) >= max_crossings) return true;
            const auto& cyc = p.faces[face];
            for (int k = 0; k < static_cast<int>(cyc.size()); ++k) {
                int d = cyc[k];
                EdgeId h = p.edge_of(d);
                if (crossed[h]) continue;
                VertexId ht = cur.graph.tail(h), hh = cur.graph.head(h);
                if (ht == u || ht == v || hh == u || hh == v) continue;
                if (!chord_ok(face, pos, 2 * k + 1)) continue;
                // Crossing through dart d leaves the face on its left,
                // passing the segment left-to-right in d's direction.
                Sign s = Planarization::is_reversed(d) ? Sign::RL : Sign::LR;
                if (!fwd) s = flip(s);
                int seg = p.segment_of(d) - p.seg_offset[h];
                int od = Planarization::alpha(d);
                crossed[h] = true;
                route.push_back({h, seg, s});
                chords[face].push_back({pos, 2 * k + 1});
                bool go = walk(p.face_of[od], 2 * idx_in_face[od] + 1, slot0);
                chords[face].pop_back();
                route.pop_back();
                crossed[h] = false;
                if (!go) return false;
            }
            return true;
        };

        int deg0 = static_cast<int>(cur.rotations[w0].size());
        for (int j = 0; j < deg0; ++j) {
            int d0 = corner_dart(w0, j);
            if (!walk(p.face_of[d0], 2 * idx_in_face[d0], j + 1)) return false;
        }
        return true;
    }
};

} // namespace

bool enumerate_completions(const Embedding& partial, const std::vector<EdgeId>& placed,
                           const Graph& full, const std::vector<EdgeId>& remaining,
                           int max_crossings,
                           const std::function<bool(const Embedding&)>& emit,
                           const std::function<bool(const Embedding&)>& prune) {
    Search s{full, remaining, max_crossings, emit, prune, placed};
    int used = 0;
    for (const auto& list : partial.crossings) used += static_cast<int>(list.size());
    used /= 2;
    return s.descend(partial, used, 0);
}

} // namespace detail

namespace {

// The documented stream order: crossing-pair set (size, then the sorted
// pair list), per-edge crossing orders, signs per sorted pair, then
// rotations. Rotation lists are compared in stored form; the engine
// canonicalizes them to start at the smallest edge id.
std::vector<int> emission_key(const Embedding& e) {
    std::vector<int> key;
    std::vector<std::pair<EdgeId, EdgeId>> pairs;
    for (EdgeId h = 0; h < e.graph.m(); ++h)
        for (const auto& rec : e.crossings[h])
            if (h < rec.other) pairs.emplace_back(h, rec.other);
    std::sort(pairs.begin(), pairs.end());
    key.push_back(static_cast<int>(pairs.size()));
    for (auto& [a, b] : pairs) {
        key.push_back(a);
        key.push_back(b);
    }
    for (EdgeId h = 0; h < e.graph.m(); ++h)
        for (const auto& rec : e.crossings[h]) key.push_back(rec.other);
    for (auto& [a, b] : pairs)
        key.push_back(e.crossings[a][e.crossing_index(a, b)].sign == Sign::LR ? 0 : 1);
    for (VertexId v = 0; v < e.graph.n; ++v)
        for (EdgeId h : e.rotations[v]) key.push_back(h);
    return key;
}

void canonicalize_rotations(Embedding& e) {
    for (auto& rot : e.rotations) {
        if (rot.size() < 2) continue;
        auto mn = std::min_element(rot.begin(), rot.end());
        std::rotate(rot.begin(), mn, rot.end());
    }
}

std::uint64_t effective_ceiling(const EnumSpec& spec) {
    if (const char* env = std::getenv("FANCROSS_ENUM_CEILING")) {
        char* end = nullptr;
        unsigned long long val = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && end != env) return val;
    }
    return spec.ceiling;
}

// Shared driver: the ordered, filtered, optionally deduped result list.
std::vector<Embedding> run_spec(const EnumSpec& spec) {
    if (spec.max_crossings < 0) throw EnumError("max_crossings must be non-negative");
    std::uint64_t ceiling = effective_ceiling(spec);
    if (ceiling > 0) {
        std::uint64_t raw = raw_candidate_count(spec.graph, spec.max_crossings);
        if (raw > ceiling)
            throw EnumError("raw candidate space " +
                            (raw == kSat ? std::string("overflows")
                                         : std::to_string(raw)) +
                            " exceeds ceiling " + std::to_string(ceiling));
    }

    std::vector<Embedding> found;
    if (spec.graph.m() == 0) return found;
    std::vector<EdgeId> order = detail::connected_edge_order(spec.graph);

    Embedding empty;
    empty.graph.n = spec.graph.n;
    empty.rotations.assign(spec.graph.n, {});
    detail::enumerate_completions(
        empty, {}, spec.graph, order, spec.max_crossings,
        [&](const Embedding& raw_emb) {
            Embedding e = raw_emb;
            canonicalize_rotations(e);
            require_valid(e, "enumerated embedding");
            if (!spec.filter || spec.filter(e)) found.push_back(std::move(e));
            return true;
        });

    std::vector<std::vector<int>> keys(found.size());
    for (size_t i = 0; i < found.size(); ++i) keys[i] = emission_key(found[i]);
    std::vector<size_t> idx(found.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return keys[a] < keys[b]; });

    std::vector<Embedding> out;
    std::set<std::vector<int>> seen;
    for (size_t i : idx) {
        if (spec.dedupe && !seen.insert(canonical_map_code(found[i])).second) continue;
        out.push_back(std::move(found[i]));
    }
    return out;
}

} // namespace

void enumerate_embeddings(const EnumSpec& spec,
                          const std::function<void(const Embedding&)>& emit) {
    for (const Embedding& e : run_spec(spec)) emit(e);
}

std::vector<Embedding> enumerate_all(const EnumSpec& spec) { return run_spec(spec); }

std::optional<Embedding> find_embedding(const EnumSpec& spec,
                                        const std::function<bool(const Embedding&)>& pred) {
    for (Embedding& e : run_spec(spec))
        if (pred(e)) return std::move(e);
    return std::nullopt;
}

} // namespace fancross
