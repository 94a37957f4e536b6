#include "fancross/validate.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fancross/planarize.hpp"

namespace fancross {

namespace {

std::string edge_str(const Graph& g, EdgeId e) {
    std::ostringstream os;
    os << "edge " << e << " {" << g.tail(e) << "," << g.head(e) << "}";
    return os.str();
}

} // namespace

std::string ValidationReport::summary() const {
    if (errors.empty()) return "valid";
    std::string out;
    for (size_t i = 0; i < errors.size(); ++i) {
        if (i) out += "; ";
        out += errors[i];
    }
    return out;
}

ValidationReport validate(const Embedding& emb) {
    ValidationReport rep;
    auto err = [&rep](const std::string& msg) { rep.errors.push_back(msg); };
    const Graph& g = emb.graph;

    bool graph_ok = true;
    if (g.n < 1) {
        err("graph has no vertices");
        graph_ok = false;
    }
    if (g.m() < 1) {
        err("graph has no edges; the outer face cannot be designated");
        graph_ok = false;
    }
    std::set<std::pair<VertexId, VertexId>> seen_pairs;
    for (EdgeId e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        if (u < 0 || v < 0 || u >= g.n || v >= g.n) {
            err("edge " + std::to_string(e) + " has an endpoint out of range");
            graph_ok = false;
            continue;
        }
        if (u >= v) {
            err("edge " + std::to_string(e) +
                (u == v ? " is a self-loop" : " is not stored tail<head"));
            graph_ok = false;
            continue;
        }
        if (!seen_pairs.insert({u, v}).second) {
            err(edge_str(g, e) + " duplicates an earlier edge");
            graph_ok = false;
        }
    }

    bool sizes_ok = true;
    if (static_cast<int>(emb.crossings.size()) != g.m()) {
        err("crossings has " + std::to_string(emb.crossings.size()) +
            " lists for " + std::to_string(g.m()) + " edges");
        sizes_ok = false;
    }
    if (static_cast<int>(emb.rotations.size()) != g.n) {
        err("rotations has " + std::to_string(emb.rotations.size()) +
            " lists for " + std::to_string(g.n) + " vertices");
        sizes_ok = false;
    }
    if (!graph_ok || !sizes_ok) return rep;

    bool content_ok = true;

    auto inc = g.incident_edges();
    for (VertexId v = 0; v < g.n; ++v) {
        std::vector<EdgeId> rot = emb.rotations[v];
        std::sort(rot.begin(), rot.end());
        if (rot != inc[v]) {
            err("rotation at vertex " + std::to_string(v) +
                " does not list the incident edges exactly once");
            content_ok = false;
        }
    }

    for (EdgeId e = 0; e < g.m(); ++e) {
        std::set<EdgeId> others;
        for (auto& rec : emb.crossings[e]) {
            if (rec.other < 0 || rec.other >= g.m()) {
                err(edge_str(g, e) + " crossing record out of range");
                content_ok = false;
                continue;
            }
            if (rec.other == e) {
                err(edge_str(g, e) + " crosses itself");
                content_ok = false;
                continue;
            }
            if (g.adjacent(e, rec.other)) {
                err(edge_str(g, e) + " crosses adjacent " + edge_str(g, rec.other));
                content_ok = false;
            }
            if (!others.insert(rec.other).second) {
                err(edge_str(g, e) + " crosses " + edge_str(g, rec.other) +
                    " more than once");
                content_ok = false;
            }
        }
    }

    if (content_ok) {
        for (EdgeId e = 0; e < g.m(); ++e) {
            for (auto& rec : emb.crossings[e]) {
                if (rec.other < e) continue; // pair handled from the smaller side
                int back = emb.crossing_index(rec.other, e);
                if (back < 0) {
                    err(edge_str(g, e) + " crosses " + edge_str(g, rec.other) +
                        " without a reciprocal record");
                    content_ok = false;
                } else if (emb.crossings[rec.other][back].sign != flip(rec.sign)) {
                    err("crossing of " + edge_str(g, e) + " and " +
                        edge_str(g, rec.other) + " has equal signs on both sides");
                    content_ok = false;
                }
            }
        }
        // Reciprocity scanned from the smaller edge misses records whose
        // partner list simply lacks them in the other direction.
        for (EdgeId e = 0; e < g.m(); ++e) {
            for (auto& rec : emb.crossings[e]) {
                if (rec.other > e) continue;
                if (emb.crossing_index(rec.other, e) < 0) {
                    err(edge_str(g, e) + " crosses " + edge_str(g, rec.other) +
                        " without a reciprocal record");
                    content_ok = false;
                }
            }
        }
    }

    if (!g.valid_edge(emb.outer.edge)) {
        err("outer reference names edge " + std::to_string(emb.outer.edge) +
            " which does not exist");
        content_ok = false;
    } else if (emb.outer.segment < 0 ||
               emb.outer.segment > static_cast<int>(emb.crossings[emb.outer.edge].size())) {
        err("outer reference segment " + std::to_string(emb.outer.segment) +
            " out of range for edge " + std::to_string(emb.outer.edge));
        content_ok = false;
    }

    if (!content_ok) return rep;

    if (!g.connected()) {
        err("graph is disconnected");
        return rep;
    }

    Planarization p = planarize_unchecked(emb);
    if (p.euler() != 2) {
        err("face trace gives Euler characteristic " + std::to_string(p.euler()) +
            ", not 2; the map does not embed in the plane");
    }
    return rep;
}

void require_valid(const Embedding& e, const std::string& context) {
    ValidationReport rep = validate(e);
    if (!rep.ok()) {
        std::string where = context.empty() ? "" : context + ": ";
        throw EmbeddingError(where + "invalid embedding: " + rep.summary());
    }
}

} // namespace fancross
