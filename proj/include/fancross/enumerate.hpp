#ifndef FANCROSS_ENUMERATE_HPP
#define FANCROSS_ENUMERATE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fancross/embedding.hpp"

namespace fancross {

struct EnumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumCeiling = 100'000'000;

struct EnumSpec {
    Graph graph;
    int max_crossings = 0;
    bool dedupe = false;
    // Emit only embeddings passing the filter. Applied before dedupe.
    std::function<bool(const Embedding&)> filter;
    // Feasibility guard over the raw candidate space; 0 disables it.
    std::uint64_t ceiling = kDefaultEnumCeiling;
};

// The documented raw-space bound the guard checks:
//   sum over k = 0..max_crossings of C(P, k) * 2^k * k! * prod_v (d_v - 1)!
// where P counts non-adjacent edge pairs and d_v is the degree of v.
// Saturates at uint64 max.
std::uint64_t raw_candidate_count(const Graph& g, int max_crossings);

// Every valid embedding of the graph with at most max_crossings
// crossings and the canonical outer reference (edge 0, segment 0,
// forward). Emission order is the lexicographic search order over
// (crossing-pair set, per-edge crossing orders, signs, rotations);
// pair sets are ordered by size, then lexicographically. Deduped mode
// keeps the first representative of each map-isomorphism class.
void enumerate_embeddings(const EnumSpec& spec,
                          const std::function<void(const Embedding&)>& emit);

std::vector<Embedding> enumerate_all(const EnumSpec& spec);

// First embedding in emission order satisfying pred.
std::optional<Embedding> find_embedding(const EnumSpec& spec,
                                        const std::function<bool(const Embedding&)>& pred);

} // namespace fancross

#endif
