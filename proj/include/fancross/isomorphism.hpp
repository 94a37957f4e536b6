#ifndef FANCROSS_ISOMORPHISM_HPP
#define FANCROSS_ISOMORPHISM_HPP

#include <vector>

#include "fancross/embedding.hpp"

namespace fancross {

// Reflection of the whole map: every rotation reversed, every crossing
// sign flipped, crossing orders kept. An involution. The outer
// reference flips its dart so it keeps naming the same region.
Embedding mirror(const Embedding& e);

// Applies a vertex relabeling, perm[old] = new. Edge ids keep their
// positions; pairs are re-canonicalized, which reverses the crossing
// list and flips signs of any edge whose orientation turns around.
Embedding relabel_vertices(const Embedding& e, const std::vector<VertexId>& perm);

// Canonical code of the map on the sphere (outer face ignored),
// minimized over both reflections, so mirror images get equal codes.
// Equal codes are exactly map isomorphism.
std::vector<int> canonical_map_code(const Embedding& e);

// True iff some graph isomorphism extends to the planarizations,
// preserving all rotations or reversing all of them globally.
bool map_isomorphic(const Embedding& a, const Embedding& b);

} // namespace fancross

#endif
