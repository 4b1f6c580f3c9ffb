#include "flatpsi/graph_json.hpp"

#include <json.hpp>

#include <sstream>

namespace flatpsi {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& text, std::size_t byte, const std::string& what) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": " << what;
    throw ParseError(os.str());
}

}  // namespace

Graph parse_graph(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(text, e.byte > 0 ? e.byte - 1 : 0, e.what());
    }
    if (!doc.is_object()) throw ParseError("top level must be an object");
    if (!doc.contains("vertices") || !doc["vertices"].is_number_unsigned())
        throw ParseError("\"vertices\" must be a non-negative integer");
    std::uint64_t n = doc["vertices"].get<std::uint64_t>();
    if (n > Graph::kMaxVertices)
        throw SizeBoundError("graph has " + std::to_string(n) + " vertices; bound is 32");

    std::vector<Edge> edges;
    if (doc.contains("edges")) {
        if (!doc["edges"].is_array()) throw ParseError("\"edges\" must be an array");
        std::uint32_t k = 0;
        for (const json& je : doc["edges"]) {
            ++k;
            if (!je.is_object() || !je.contains("ends") || !je["ends"].is_array() ||
                je["ends"].size() != 2)
                throw ParseError("edge " + std::to_string(k) +
                                 ": expected {\"id\": ..., \"ends\": [a, b]}");
            Edge e;
            e.id = je.contains("id") ? je["id"].get<std::string>() : "e" + std::to_string(k);
            for (int s = 0; s < 2; ++s) {
                const json& end = je["ends"][s];
                if (!end.is_number_unsigned() || end.get<std::uint64_t>() < 1 ||
                    end.get<std::uint64_t>() > n)
                    throw ValidationError("edge '" + e.id + "' has endpoint outside 1.." +
                                          std::to_string(n));
                (s == 0 ? e.u : e.v) = static_cast<std::uint32_t>(end.get<std::uint64_t>() - 1);
            }
            edges.push_back(std::move(e));
        }
    }
    return Graph(static_cast<std::uint32_t>(n), std::move(edges));
}

std::string graph_to_json(const Graph& g) {
    json doc;
    doc["vertices"] = g.vertex_count();
    doc["edges"] = json::array();
    for (const Edge& e : g.edges())
        doc["edges"].push_back({{"id", e.id}, {"ends", {e.u + 1, e.v + 1}}});
    return doc.dump();
}

}  // namespace flatpsi
