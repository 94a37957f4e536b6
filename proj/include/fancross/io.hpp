#ifndef FANCROSS_IO_HPP
#define FANCROSS_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "fancross/embedding.hpp"

namespace fancross {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Document formats. Embeddings travel as "fancross-embedding/1":
//   { "format": "fancross-embedding/1", "n": int, "edges": [[u,v],...],
//     "crossings": [[{"other": id, "sign": "LR"|"RL"},...],...],
//     "rotations": [[edge id,...],...],
//     "outer": {"edge": id, "segment": int, "dir": "fwd"|"rev"} }
// Bare graphs travel as "fancross-graph/1":
//   { "format": "fancross-graph/1", "n": int, "edges": [[u,v],...] }
// serialize_* emit a canonical layout (fixed key order, 2-space indent,
// trailing newline); parse(serialize(x)) == x and serialize(parse(doc))
// == doc for canonical documents.

nlohmann::ordered_json embedding_to_json(const Embedding& e);
Embedding embedding_from_json(const nlohmann::json& j);

nlohmann::ordered_json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

std::string serialize_embedding(const Embedding& e);
Embedding parse_embedding(const std::string& text);

std::string serialize_graph(const Graph& g);
Graph parse_graph(const std::string& text);

// File helpers; ParseError on unreadable files or bad documents.
Embedding read_embedding_file(const std::string& path);
Graph read_graph_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace fancross

#endif
