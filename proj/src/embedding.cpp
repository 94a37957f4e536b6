#include "fancross/embedding.hpp"

namespace fancross {

int Embedding::crossing_count() const {
    int total = 0;
    for (auto& list : crossings) total += static_cast<int>(list.size());
    return total / 2;
}

int Embedding::crossing_index(EdgeId e, EdgeId f) const {
    const auto& list = crossings[e];
    for (int i = 0; i < static_cast<int>(list.size()); ++i)
        if (list[i].other == f) return i;
    return -1;
}

std::vector<EdgeId> Embedding::crossers(EdgeId e) const {
    std::vector<EdgeId> out;
    out.reserve(crossings[e].size());
    for (auto& r : crossings[e]) out.push_back(r.other);
    return out;
}

int Embedding::rotation_index(VertexId v, EdgeId e) const {
    const auto& rot = rotations[v];
    for (int i = 0; i < static_cast<int>(rot.size()); ++i)
        if (rot[i] == e) return i;
    return -1;
}

Embedding plane_embedding(const Graph& g,
                          std::vector<std::vector<EdgeId>> rotations,
                          OuterRef outer) {
    Embedding e;
    e.graph = g;
    e.crossings.assign(g.m(), {});
    e.rotations = std::move(rotations);
    e.outer = outer;
    return e;
}

} // namespace fancross
