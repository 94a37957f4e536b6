#ifndef FANCROSS_CATALOG_HPP
#define FANCROSS_CATALOG_HPP

#include <string>
#include <vector>

#include "fancross/embedding.hpp"

namespace fancross {

// The five pairwise non-isomorphic K5 embeddings, labeled a..e by
// index. (a) is 1-planar and fan-crossing-free, (b)-(d) are fan-planar,
// (e) has the triangle-crossing.
std::vector<Embedding> k5_embeddings();

// Three fan-crossing K7 embeddings, each containing the K5 embedding of
// the same index on vertices 0..4, extended by two outer vertices.
std::vector<Embedding> k7_embeddings();

// The K7 used as an impenetrable fat edge: the first K7 embedding with
// the outer face chosen so the two added vertices (5 and 6) lie on it.
Embedding k7_gadget();

// The fan-crossing, non-fan-planar witness: a pentagonal prism of fat
// edges with a gadget island, every fat edge expanded to a K7.
Embedding graph_m();

// True iff deleting every segment of every uncrossed edge from the
// planarization leaves all real vertices mutually connected.
bool fat_edge_connectivity(const Embedding& e);

// Named registry for the CLI.
std::vector<std::string> catalog_names();
Embedding catalog_entry(const std::string& name);

} // namespace fancross

#endif
