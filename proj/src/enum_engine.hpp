#ifndef FANCROSS_ENUM_ENGINE_HPP
#define FANCROSS_ENUM_ENGINE_HPP

#include <functional>
#include <vector>

#include "fancross/embedding.hpp"

namespace fancross {
namespace detail {

// Edge-by-edge curve-routing search over partial arrangements.
//
// `partial` is an embedding of a subgraph of `full` whose edge i is the
// full-graph edge placed[i]; its vertex ids are the full-graph ids. The
// engine inserts the `remaining` full-graph edges in the given order,
// routing each new edge through the faces of the current partial
// planarization: pick a corner at the start vertex, cross a sequence of
// distinct, non-adjacent, already-placed edges, and stop at a corner of
// the end vertex (or drop the end vertex into the final face when it
// has no placed edge yet). Every completed route yields a valid partial
// by construction, so the search never wanders into unrealizable
// states.
//
// Each remaining edge must have at least one endpoint with a placed
// edge when its turn comes, and the partial must stay connected over
// the touched vertices; both are the caller's responsibility (an empty
// partial is allowed and seeds itself with the first remaining edge).
//
// emit receives every completed embedding translated back to full-graph
// edge ids, with rotations in raw insertion order and outer {0,0,fwd};
// returning false aborts the whole search. prune, when set, is called
// with each intermediate sub-id-space embedding right after an
// insertion; returning false abandons that branch.
//
// Returns false iff emit aborted the search.
bool enumerate_completions(const Embedding& partial, const std::vector<EdgeId>& placed,
                           const Graph& full, const std::vector<EdgeId>& remaining,
                           int max_crossings,
                           const std::function<bool(const Embedding&)>& emit,
                           const std::function<bool(const Embedding&)>& prune = {});

// Edge order for enumerate_completions starting from nothing: edge 0
// first, then always the smallest-id edge sharing a vertex with the
// edges before it. Throws EnumError when no such order covers the whole
// graph (disconnected).
std::vector<EdgeId> connected_edge_order(const Graph& g);

} // namespace detail
} // namespace fancross

#endif
