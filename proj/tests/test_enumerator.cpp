#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fancross/classifier.hpp"
#include "fancross/enumerate.hpp"
#include "fancross/io.hpp"
#include "fancross/isomorphism.hpp"
#include "fancross/validate.hpp"

using namespace fancross;

namespace {

// Reference enumerator: builds every candidate data set over the raw
// space (a set of at most max_crossings non-adjacent edge pairs, an
// order for the crossings along each edge, a sign per pair, min-first
// rotations, canonical outer reference) and keeps the candidates that
// validate. It shares no code with the routed search and is only
// usable for tiny graphs.
std::vector<Embedding> naive_reference(const Graph& g, int max_crossings) {
    std::vector<std::pair<EdgeId, EdgeId>> pairs;
    for (EdgeId e = 0; e < g.m(); ++e)
        for (EdgeId f = e + 1; f < g.m(); ++f)
            if (!g.adjacent(e, f)) pairs.push_back({e, f});

    // Per-vertex rotation choices with the smallest incident edge first,
    // so each cyclic order appears exactly once.
    std::vector<std::vector<std::vector<EdgeId>>> rot_choices(g.n);
    for (VertexId v = 0; v < g.n; ++v) {
        std::vector<EdgeId> inc = g.incident_edges()[v];
        std::vector<EdgeId> tail(inc.begin() + 1, inc.end());
        do {
            std::vector<EdgeId> r = {inc[0]};
            r.insert(r.end(), tail.begin(), tail.end());
            rot_choices[v].push_back(r);
        } while (std::next_permutation(tail.begin(), tail.end()));
    }

    std::vector<Embedding> out;
    std::vector<int> subset;

    auto emit_for_subset = [&]() {
        // Crossers of each edge for the chosen pair set.
        std::vector<std::vector<EdgeId>> crossers(g.m());
        for (int i : subset) {
            crossers[pairs[i].first].push_back(pairs[i].second);
            crossers[pairs[i].second].push_back(pairs[i].first);
        }
        std::vector<std::vector<std::vector<EdgeId>>> order_choices(g.m());
        for (EdgeId e = 0; e < g.m(); ++e) {
            std::sort(crossers[e].begin(), crossers[e].end());
            do {
                order_choices[e].push_back(crossers[e]);
            } while (std::next_permutation(crossers[e].begin(), crossers[e].end()));
        }

        int k = static_cast<int>(subset.size());
        for (std::uint32_t signs = 0; signs < (1u << k); ++signs) {
            // Odometer over per-edge orders, then per-vertex rotations.
            std::vector<int> oi(g.m(), 0), ri(g.n, 0);
            for (;;) {
                Embedding cand{g};
                for (EdgeId e = 0; e < g.m(); ++e)
                    for (EdgeId f : order_choices[e][oi[e]]) {
                        // Sign stored on e for the pair {e,f}: the chosen
                        // bit is read from the smaller id and flipped on
                        // the larger one.
                        int bit = -1;
                        EdgeId lo = std::min(e, f), hi = std::max(e, f);
                        for (int i = 0; i < k; ++i)
                            if (pairs[subset[static_cast<size_t>(i)]] ==
                                std::make_pair(lo, hi))
                                bit = i;
                        Sign s = (signs >> bit) & 1 ? Sign::RL : Sign::LR;
                        if (e != lo) s = flip(s);
                        cand.crossings[e].push_back({f, s});
                    }
                for (VertexId v = 0; v < g.n; ++v)
                    cand.rotations[v] = rot_choices[v][ri[v]];
                cand.outer = OuterRef{0, 0, false};
                if (validate(cand).ok()) out.push_back(cand);

                // Advance the odometer.
                int pos = 0;
                for (; pos < g.m(); ++pos) {
                    if (++oi[pos] < static_cast<int>(order_choices[pos].size())) break;
                    oi[pos] = 0;
                }
                if (pos < g.m()) continue;
                for (pos = 0; pos < g.n; ++pos) {
                    if (++ri[pos] < static_cast<int>(rot_choices[pos].size())) break;
                    ri[pos] = 0;
                }
                if (pos == g.n) break;
            }
        }
    };

    // All subsets of pairs with at most max_crossings elements.
    std::function<void(size_t)> walk = [&](size_t from) {
        emit_for_subset();
        if (static_cast<int>(subset.size()) >= max_crossings) return;
        for (size_t i = from; i < pairs.size(); ++i) {
            subset.push_back(static_cast<int>(i));
            walk(i + 1);
            subset.pop_back();
        }
    };
    walk(0);
    return out;
}

std::set<std::string> as_strings(const std::vector<Embedding>& v) {
    std::set<std::string> out;
    for (const auto& e : v) out.insert(serialize_embedding(e));
    return out;
}

int crossing_total(const Embedding& e) {
    int c = 0;
    for (EdgeId x = 0; x < e.graph.m(); ++x)
        c += static_cast<int>(e.crossings[x].size());
    return c / 2;
}

std::map<int, int> histogram(const std::vector<Embedding>& v) {
    std::map<int, int> h;
    for (const auto& e : v) ++h[crossing_total(e)];
    return h;
}

EnumSpec spec_for(const Graph& g, int mc, bool dedupe) {
    EnumSpec s;
    s.graph = g;
    s.max_crossings = mc;
    s.dedupe = dedupe;
    return s;
}

} // namespace

TEST_CASE("triangle admits exactly the plane embedding") {
    Graph g = Graph::complete(3);
    auto none = enumerate_all(spec_for(g, 0, true));
    auto one = enumerate_all(spec_for(g, 1, true));
    CHECK(none.size() == 1);
    CHECK(one.size() == 1);
    CHECK(crossing_total(one[0]) == 0);
    CHECK(validate(one[0]).ok());
}

TEST_CASE("search matches the naive reference on a triangle") {
    Graph g = Graph::complete(3);
    auto ours = enumerate_all(spec_for(g, 1, false));
    auto ref = naive_reference(g, 1);
    CHECK(as_strings(ours) == as_strings(ref));
}

TEST_CASE("search matches the naive reference on C4") {
    Graph g = Graph::cycle(4);
    auto ours = enumerate_all(spec_for(g, 2, false));
    auto ref = naive_reference(g, 2);
    CHECK(ours.size() == 5);
    CHECK(as_strings(ours) == as_strings(ref));
    std::map<int, int> h = histogram(ours);
    CHECK(h[0] == 1);
    CHECK(h[1] == 4);
    CHECK(h[2] == 0);
}

TEST_CASE("search matches the naive reference on K4") {
    Graph g = Graph::complete(4);
    auto ours = enumerate_all(spec_for(g, 2, false));
    auto ref = naive_reference(g, 2);
    CHECK(ours.size() == 8);
    CHECK(as_strings(ours) == as_strings(ref));
    std::map<int, int> h = histogram(ours);
    CHECK(h[0] == 2);
    CHECK(h[1] == 6);
    // Two crossings would need both diagonal pairs at once, which no
    // simple drawing of K4 realizes.
    CHECK(h[2] == 0);
}

TEST_CASE("search matches the naive reference on K5 with one crossing") {
    Graph g = Graph::complete(5);
    auto ours = enumerate_all(spec_for(g, 1, false));
    auto ref = naive_reference(g, 1);
    CHECK(!ours.empty());
    CHECK(as_strings(ours) == as_strings(ref));
    for (const auto& e : ours) CHECK(crossing_total(e) == 1);
    auto classes = enumerate_all(spec_for(g, 1, true));
    CHECK(classes.size() == 1);
}

TEST_CASE("K4 dedupes to the plane class and the crossed class") {
    Graph g = Graph::complete(4);
    auto classes = enumerate_all(spec_for(g, 1, true));
    REQUIRE(classes.size() == 2);
    CHECK(crossing_total(classes[0]) == 0);
    CHECK(crossing_total(classes[1]) == 1);
    CHECK(canonical_map_code(classes[0]) != canonical_map_code(classes[1]));

    // Every raw emission is isomorphic to one of the two classes.
    auto raw = enumerate_all(spec_for(g, 1, false));
    CHECK(raw.size() == 8);
    for (const auto& e : raw) {
        bool matched = false;
        for (const auto& c : classes)
            if (canonical_map_code(e) == canonical_map_code(c)) matched = true;
        CHECK(matched);
    }
}

TEST_CASE("K5 has five embedding classes") {
    Graph g = Graph::complete(5);
    EnumSpec s5 = spec_for(g, 5, true);
    s5.ceiling = 0;
    auto classes = enumerate_all(s5);
    REQUIRE(classes.size() == 5);
    std::map<int, int> h = histogram(classes);
    CHECK(h[1] == 1);
    CHECK(h[3] == 2);
    CHECK(h[5] == 2);
    for (size_t i = 0; i < classes.size(); ++i)
        for (size_t j = i + 1; j < classes.size(); ++j)
            CHECK(canonical_map_code(classes[i]) != canonical_map_code(classes[j]));

    // Capping the budget at three keeps exactly the small classes.
    EnumSpec s3 = spec_for(g, 3, true);
    s3.ceiling = 0;
    auto low = enumerate_all(s3);
    CHECK(low.size() == 3);
}

TEST_CASE("emissions are deterministic and sorted by the documented key") {
    Graph g = Graph::complete(4);
    auto a = enumerate_all(spec_for(g, 2, false));
    auto b = enumerate_all(spec_for(g, 2, false));
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i)
        CHECK(serialize_embedding(a[i]) == serialize_embedding(b[i]));

    // The documented order: crossing-pair sets by size then
    // lexicographically, then per-edge orders, signs, rotations.
    auto key = [](const Embedding& e) {
        std::vector<int> k;
        std::vector<std::pair<int, int>> ps;
        for (EdgeId x = 0; x < e.graph.m(); ++x)
            for (const auto& r : e.crossings[x])
                if (x < r.other) ps.push_back({x, r.other});
        std::sort(ps.begin(), ps.end());
        k.push_back(static_cast<int>(ps.size()));
        for (auto [p, q] : ps) {
            k.push_back(p);
            k.push_back(q);
        }
        for (EdgeId x = 0; x < e.graph.m(); ++x)
            for (const auto& r : e.crossings[x]) k.push_back(r.other);
        for (auto [p, q] : ps) {
            (void)q;
            for (const auto& r : e.crossings[p])
                if (r.other == q) k.push_back(r.sign == Sign::LR ? 0 : 1);
        }
        for (VertexId v = 0; v < e.graph.n; ++v)
            for (EdgeId x : e.rotations[v]) k.push_back(x);
        return k;
    };
    for (size_t i = 0; i + 1 < a.size(); ++i) CHECK(key(a[i]) < key(a[i + 1]));
}

TEST_CASE("rotations come out minimum-first") {
    Graph g = Graph::complete(4);
    for (const auto& e : enumerate_all(spec_for(g, 1, false)))
        for (VertexId v = 0; v < g.n; ++v)
            CHECK(e.rotations[v][0] ==
                  *std::min_element(e.rotations[v].begin(), e.rotations[v].end()));
}

TEST_CASE("raw candidate count matches the documented formula") {
    // Triangle: no non-adjacent pairs, rotations are all forced.
    CHECK(raw_candidate_count(Graph::complete(3), 1) == 1);
    // K4: 16 rotation systems, 3 pairs, 2 signs each: 16 + 3*2*16.
    CHECK(raw_candidate_count(Graph::complete(4), 1) == 112);
    // Adding k=2: C(3,2)*2^2*2! = 24 configs on the same 16 rotations.
    CHECK(raw_candidate_count(Graph::complete(4), 2) == 112 + 384);
    // Saturates instead of overflowing.
    CHECK(raw_candidate_count(Graph::complete(12), 60) ==
          std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("the ceiling guard refuses oversized runs") {
    Graph g = Graph::complete(4);
    EnumSpec s = spec_for(g, 1, false);
    s.ceiling = 10;
    CHECK_THROWS_AS(enumerate_all(s), EnumError);
    s.ceiling = 0; // disabled
    CHECK(enumerate_all(s).size() == 8);
    s.ceiling = 112; // exactly at the estimate
    CHECK(enumerate_all(s).size() == 8);
}

TEST_CASE("the environment override beats the spec ceiling") {
    Graph g = Graph::complete(4);
    EnumSpec s = spec_for(g, 1, false);
    setenv("FANCROSS_ENUM_CEILING", "10", 1);
    CHECK_THROWS_AS(enumerate_all(s), EnumError);
    setenv("FANCROSS_ENUM_CEILING", "0", 1);
    s.ceiling = 10;
    CHECK(enumerate_all(s).size() == 8);
    unsetenv("FANCROSS_ENUM_CEILING");
    CHECK_THROWS_AS(enumerate_all(s), EnumError);
    s.ceiling = 0;
    CHECK(enumerate_all(s).size() == 8);
}

TEST_CASE("filters apply before dedupe") {
    Graph g = Graph::complete(4);
    EnumSpec s = spec_for(g, 1, true);
    s.filter = [](const Embedding& e) {
        for (EdgeId x = 0; x < e.graph.m(); ++x)
            if (!e.crossings[x].empty()) return true;
        return false;
    };
    auto crossed = enumerate_all(s);
    REQUIRE(crossed.size() == 1);
    CHECK(crossing_total(crossed[0]) == 1);

    // Rejecting only the class representative must surface a later
    // member of the same class, which distinguishes filter-then-dedupe
    // from dedupe-then-filter.
    std::string first_crossed;
    for (const auto& e : enumerate_all(spec_for(g, 1, false)))
        if (crossing_total(e) == 1) {
            first_crossed = serialize_embedding(e);
            break;
        }
    EnumSpec t = spec_for(g, 1, true);
    t.filter = [&](const Embedding& e) {
        return crossing_total(e) == 1 && serialize_embedding(e) != first_crossed;
    };
    auto later = enumerate_all(t);
    REQUIRE(later.size() == 1);
    CHECK(serialize_embedding(later[0]) != first_crossed);
    CHECK(canonical_map_code(later[0]) == canonical_map_code(crossed[0]));
}

TEST_CASE("find_embedding returns the first match in emission order") {
    Graph g = Graph::complete(5);
    EnumSpec s = spec_for(g, 5, true);
    s.ceiling = 0;
    auto tc = find_embedding(s, [](const Embedding& e) {
        return !triangle_crossings_direct(e).empty();
    });
    REQUIRE(tc.has_value());
    CHECK(crossing_total(*tc) == 5);
    auto r = verdicts(*tc);
    CHECK(r.adjacency_crossing);
    CHECK(!r.fan_crossing);

    auto none = find_embedding(spec_for(Graph::complete(3), 1, false),
                               [](const Embedding& e) {
                                   return !e.crossings[0].empty();
                               });
    CHECK(!none.has_value());
}

TEST_CASE("disconnected graphs are rejected") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    CHECK_THROWS_AS(enumerate_all(spec_for(g, 0, false)), EnumError);
}

TEST_CASE("a negative crossing budget is rejected") {
    CHECK_THROWS_AS(enumerate_all(spec_for(Graph::complete(3), -1, false)), EnumError);
}

TEST_CASE("enumeration respects the per-embedding emit callback") {
    Graph g = Graph::complete(4);
    int seen = 0;
    enumerate_embeddings(spec_for(g, 1, false), [&](const Embedding& e) {
        CHECK(validate(e).ok());
        ++seen;
    });
    CHECK(seen == 8);
}
