#ifndef FANCROSS_GRAPH_HPP
#define FANCROSS_GRAPH_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fancross {

using VertexId = int;
using EdgeId = int;

// Thrown when an operation receives an embedding or arguments it cannot
// work with. Operations never mutate their input, so throwing is a full
// rollback.
struct EmbeddingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A surgery produced a route or result that violates the embedding
// axioms (double crossing, adjacent crossing, broken planarity).
struct SurgeryError : EmbeddingError {
    using EmbeddingError::EmbeddingError;
};

// Simple undirected graph. Vertices are 0..n-1, an edge id is an index
// into `edges`. Edges are stored with the smaller endpoint first; the
// smaller endpoint is the edge's tail everywhere in this library.
struct Graph {
    int n = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;

    Graph() = default;
    explicit Graph(int n_vertices) : n(n_vertices) {}

    int m() const { return static_cast<int>(edges.size()); }

    VertexId tail(EdgeId e) const { return edges[e].first; }
    VertexId head(EdgeId e) const { return edges[e].second; }

    bool valid_vertex(VertexId v) const { return v >= 0 && v < n; }
    bool valid_edge(EdgeId e) const { return e >= 0 && e < m(); }

    bool incident(EdgeId e, VertexId v) const {
        return edges[e].first == v || edges[e].second == v;
    }

    VertexId other_end(EdgeId e, VertexId v) const {
        if (edges[e].first == v) return edges[e].second;
        if (edges[e].second == v) return edges[e].first;
        throw EmbeddingError("other_end: vertex " + std::to_string(v) +
                             " not on edge " + std::to_string(e));
    }

    // -1 when the pair is not an edge.
    EdgeId find_edge(VertexId u, VertexId v) const;
    bool has_edge(VertexId u, VertexId v) const { return find_edge(u, v) >= 0; }

    // Appends {u,v} in canonical order, returns the new edge id.
    EdgeId add_edge(VertexId u, VertexId v);

    bool adjacent(EdgeId e, EdgeId f) const { return shared_vertex(e, f) >= 0; }
    // The common endpoint of e and f, or -1.
    VertexId shared_vertex(EdgeId e, EdgeId f) const;

    // Per-vertex lists of incident edge ids, ascending.
    std::vector<std::vector<EdgeId>> incident_edges() const;
    std::vector<int> degrees() const;

    bool connected() const;

    // Stock graphs used by tests and the enumeration suite.
    static Graph complete(int n);
    static Graph cycle(int n);
    // Hub vertex 0 joined to a cycle 1..k.
    static Graph wheel(int k);
    // Two k-cycles 0..k-1 and k..2k-1 joined by rungs i,i+k.
    static Graph prism(int k);
};

bool operator==(const Graph& a, const Graph& b);

} // namespace fancross

#endif
