#include "fancross/graph.hpp"

#include <algorithm>

namespace fancross {

EdgeId Graph::find_edge(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    for (EdgeId e = 0; e < m(); ++e)
        if (edges[e].first == u && edges[e].second == v) return e;
    return -1;
}

EdgeId Graph::add_edge(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    if (u == v) throw EmbeddingError("add_edge: self-loop at " + std::to_string(u));
    if (!valid_vertex(u) || !valid_vertex(v))
        throw EmbeddingError("add_edge: vertex out of range");
    if (has_edge(u, v))
        throw EmbeddingError("add_edge: duplicate edge {" + std::to_string(u) +
                             "," + std::to_string(v) + "}");
    edges.emplace_back(u, v);
    return m() - 1;
}

VertexId Graph::shared_vertex(EdgeId e, EdgeId f) const {
    auto [a, b] = edges[e];
    auto [c, d] = edges[f];
    if (a == c || a == d) return a;
    if (b == c || b == d) return b;
    return -1;
}

std::vector<std::vector<EdgeId>> Graph::incident_edges() const {
    std::vector<std::vector<EdgeId>> inc(n);
    for (EdgeId e = 0; e < m(); ++e) {
        inc[edges[e].first].push_back(e);
        inc[edges[e].second].push_back(e);
    }
    return inc;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(n, 0);
    for (auto& [u, v] : edges) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

bool Graph::connected() const {
    if (n == 0) return true;
    auto inc = incident_edges();
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (EdgeId e : inc[v]) {
            VertexId w = other_end(e, v);
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

Graph Graph::complete(int n) {
    Graph g;
    g.n = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
    return g;
}

Graph Graph::cycle(int n) {
    Graph g;
    g.n = n;
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph Graph::wheel(int k) {
    Graph g;
    g.n = k + 1;
    for (int i = 1; i <= k; ++i) g.add_edge(0, i);
    for (int i = 1; i <= k; ++i) g.add_edge(i, i % k + 1);
    return g;
}

Graph Graph::prism(int k) {
    Graph g;
    g.n = 2 * k;
    for (int i = 0; i < k; ++i) g.add_edge(i, (i + 1) % k);
    for (int i = 0; i < k; ++i) g.add_edge(k + i, k + (i + 1) % k);
    for (int i = 0; i < k; ++i) g.add_edge(i, k + i);
    return g;
}

bool operator==(const Graph& a, const Graph& b) {
    return a.n == b.n && a.edges == b.edges;
}

} // namespace fancross
