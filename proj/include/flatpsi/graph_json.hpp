#ifndef FLATPSI_GRAPH_JSON_HPP
#define FLATPSI_GRAPH_JSON_HPP

#include <string>

#include "flatpsi/graph.hpp"

namespace flatpsi {

/// Parses the graph JSON format
///   {"vertices": 2, "edges": [{"id":"A","ends":[1,2]}, ...]}
/// with 1-based endpoints. Missing ids default to "e1","e2",... by position.
/// Throws ParseError on malformed JSON (with a line anchor), ValidationError
/// on bad endpoints or duplicate ids, SizeBoundError past 32 vertices/edges.
Graph parse_graph(const std::string& text);

/// Serializes back to the same format.
std::string graph_to_json(const Graph& g);

}  // namespace flatpsi

#endif
