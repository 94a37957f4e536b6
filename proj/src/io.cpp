#include "fancross/io.hpp"

#include <fstream>
#include <sstream>

namespace fancross {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const char* kEmbeddingFormat = "fancross-embedding/1";
const char* kGraphFormat = "fancross-graph/1";

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ParseError("field '" + field + "': " + what);
}

int get_int(const json& j, const std::string& field) {
    if (!j.contains(field)) fail(field, "missing");
    if (!j[field].is_number_integer()) fail(field, "expected an integer");
    return j[field].get<int>();
}

const json& get_array(const json& j, const std::string& field) {
    if (!j.contains(field)) fail(field, "missing");
    if (!j[field].is_array()) fail(field, "expected an array");
    return j[field];
}

void check_format(const json& j, const char* want) {
    if (!j.is_object()) throw ParseError("document is not a JSON object");
    if (!j.contains("format") || !j["format"].is_string())
        fail("format", "missing or not a string");
    std::string got = j["format"].get<std::string>();
    if (got != want)
        fail("format", "expected \"" + std::string(want) + "\", got \"" + got + "\"");
}

std::vector<std::pair<VertexId, VertexId>> edges_from(const json& arr) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (size_t i = 0; i < arr.size(); ++i) {
        const json& pair = arr[i];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
            !pair[1].is_number_integer())
            fail("edges[" + std::to_string(i) + "]", "expected [u,v]");
        edges.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    }
    return edges;
}

} // namespace

ordered_json graph_to_json(const Graph& g) {
    ordered_json j;
    j["format"] = kGraphFormat;
    j["n"] = g.n;
    ordered_json edges = ordered_json::array();
    for (auto& [u, v] : g.edges) edges.push_back({u, v});
    j["edges"] = edges;
    return j;
}

Graph graph_from_json(const json& j) {
    check_format(j, kGraphFormat);
    Graph g;
    g.n = get_int(j, "n");
    g.edges = edges_from(get_array(j, "edges"));
    return g;
}

ordered_json embedding_to_json(const Embedding& e) {
    ordered_json j;
    j["format"] = kEmbeddingFormat;
    j["n"] = e.graph.n;
    ordered_json edges = ordered_json::array();
    for (auto& [u, v] : e.graph.edges) edges.push_back({u, v});
    j["edges"] = edges;
    ordered_json crossings = ordered_json::array();
    for (auto& list : e.crossings) {
        ordered_json jl = ordered_json::array();
        for (auto& rec : list)
            jl.push_back({{"other", rec.other}, {"sign", sign_name(rec.sign)}});
        crossings.push_back(jl);
    }
    j["crossings"] = crossings;
    j["rotations"] = e.rotations;
    j["outer"] = {{"edge", e.outer.edge},
                  {"segment", e.outer.segment},
                  {"dir", e.outer.reversed ? "rev" : "fwd"}};
    return j;
}

Embedding embedding_from_json(const json& j) {
    check_format(j, kEmbeddingFormat);
    Embedding e;
    e.graph.n = get_int(j, "n");
    e.graph.edges = edges_from(get_array(j, "edges"));

    const json& crossings = get_array(j, "crossings");
    for (size_t i = 0; i < crossings.size(); ++i) {
        std::string where = "crossings[" + std::to_string(i) + "]";
        if (!crossings[i].is_array()) fail(where, "expected an array");
        std::vector<CrossingRecord> list;
        for (size_t k = 0; k < crossings[i].size(); ++k) {
            const json& rec = crossings[i][k];
            std::string rwhere = where + "[" + std::to_string(k) + "]";
            if (!rec.is_object()) fail(rwhere, "expected an object");
            CrossingRecord r;
            r.other = get_int(rec, "other");
            if (!rec.contains("sign") || !rec["sign"].is_string())
                fail(rwhere + ".sign", "missing or not a string");
            std::string s = rec["sign"].get<std::string>();
            if (s == "LR")
                r.sign = Sign::LR;
            else if (s == "RL")
                r.sign = Sign::RL;
            else
                fail(rwhere + ".sign", "expected \"LR\" or \"RL\"");
            list.push_back(r);
        }
        e.crossings.push_back(std::move(list));
    }

    const json& rotations = get_array(j, "rotations");
    for (size_t v = 0; v < rotations.size(); ++v) {
        std::string where = "rotations[" + std::to_string(v) + "]";
        if (!rotations[v].is_array()) fail(where, "expected an array");
        std::vector<EdgeId> rot;
        for (auto& item : rotations[v]) {
            if (!item.is_number_integer()) fail(where, "expected edge ids");
            rot.push_back(item.get<int>());
        }
        e.rotations.push_back(std::move(rot));
    }

    if (!j.contains("outer")) fail("outer", "missing");
    const json& outer = j["outer"];
    e.outer.edge = get_int(outer, "edge");
    e.outer.segment = get_int(outer, "segment");
    if (!outer.contains("dir") || !outer["dir"].is_string())
        fail("outer.dir", "missing or not a string");
    std::string dir = outer["dir"].get<std::string>();
    if (dir == "fwd")
        e.outer.reversed = false;
    else if (dir == "rev")
        e.outer.reversed = true;
    else
        fail("outer.dir", "expected \"fwd\" or \"rev\"");
    return e;
}

namespace {

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& ex) {
        throw ParseError(std::string("not valid JSON: ") + ex.what());
    }
}

} // namespace

std::string serialize_embedding(const Embedding& e) {
    return embedding_to_json(e).dump(2) + "\n";
}

Embedding parse_embedding(const std::string& text) {
    return embedding_from_json(parse_text(text));
}

std::string serialize_graph(const Graph& g) {
    return graph_to_json(g).dump(2) + "\n";
}

Graph parse_graph(const std::string& text) {
    return graph_from_json(parse_text(text));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

Embedding read_embedding_file(const std::string& path) {
    try {
        return parse_embedding(read_text_file(path));
    } catch (const ParseError& ex) {
        throw ParseError(path + ": " + ex.what());
    }
}

Graph read_graph_file(const std::string& path) {
    try {
        return parse_graph(read_text_file(path));
    } catch (const ParseError& ex) {
        throw ParseError(path + ": " + ex.what());
    }
}

} // namespace fancross
