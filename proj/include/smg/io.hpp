#pragma once

// Text format, one statement per line:
//
//   # comment
//   nodes: a b c        optional; when present every other name must be declared
//   a -> b              arrow
//   b <-> c             arc
//   c -- a              line
//   marg: m             optional role marks (M)
//   cond: s             optional role marks (C)
//
// Names in `nodes:`, `marg:` and `cond:` are separated by spaces or commas.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "smg/graph.hpp"

namespace smg {

struct GraphDocument {
  std::string name;
  MixedGraph graph;
  std::vector<std::string> marginalised;  // sorted
  std::vector<std::string> conditioned;   // sorted

  bool operator==(const GraphDocument& other) const {
    return graph == other.graph && marginalised == other.marginalised && conditioned == other.conditioned;
  }
};

// Throws ParseError (with line and column), DuplicateEdge, LoopEdge,
// UndeclaredNode, InvalidLabel or SpecInvalid (a node both marginalised and
// conditioned).
GraphDocument parse_graph(std::string_view text, std::string name = {});
GraphDocument read_graph_file(const std::string& path);

// Canonical text: the `nodes:` line, the edges by kind then endpoints, then the
// role marks.
std::string serialize_graph(const GraphDocument& doc);
std::string serialize_graph(const MixedGraph& g);

nlohmann::ordered_json graph_to_json(const GraphDocument& doc);
GraphDocument graph_from_json(const nlohmann::json& j);

std::string to_dot(const MixedGraph& g);

}  // namespace smg
