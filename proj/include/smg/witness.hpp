#pragma once

// Constructive converses of the projections: a DAG whose projection is a given
// ribbonless graph, and maximalization through primitive inducing paths.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "smg/graph.hpp"
#include "smg/msep.hpp"

namespace smg {

struct DagifyResult {
  MixedGraph dag;
  std::vector<std::string> marginalised;  // M, fresh nodes
  std::vector<std::string> conditioned;   // C, fresh nodes
  // Fresh node -> the edge of the input it stands in for.
  std::map<std::string, LabeledEdge> origin;
};

// Each arc i<->j becomes i <- _m -> j with _m in M, each line i--j becomes
// i -> _c <- j with _c in C, and while a direction-preserving cycle remains its
// smallest arrow j -> i becomes j -> _c <- _m -> i. Throws NotRibbonless.
DagifyResult dagify(const MixedGraph& h);

struct PrimitiveInducingPath {
  std::vector<NodeIndex> nodes;  // ⟨j, q1, ..., qp, i⟩ with j < i
  std::vector<Edge> edges;

  Signature signature() const {
    return {edges.front().mark_at(nodes.front()), edges.back().mark_at(nodes.back())};
  }
};

// Paths between non-adjacent nodes whose inner nodes are all colliders and
// ancestors of an endpoint. Enumeration stops after `limit` paths.
std::vector<PrimitiveInducingPath> primitive_inducing_paths(const MixedGraph& g, std::size_t limit = 100'000);
bool has_primitive_inducing_path(const MixedGraph& g, NodeIndex j, NodeIndex i);

// No primitive inducing path.
bool is_maximal(const MixedGraph& g);
// Every non-adjacent pair is m-separated by some subset of the other nodes.
// Throws TooLarge above `bound` nodes.
bool is_maximal_by_definition(const MixedGraph& g, std::size_t bound = 12);

struct MaximalizeResult {
  MixedGraph graph;
  std::size_t iterations = 0;
  std::vector<std::string> warnings;
};

// Adds, for every primitive inducing path, the edge between its endpoints with
// the path's end marks, until none is left. Throws NotRibbonless.
MaximalizeResult maximalize(const MixedGraph& g);

}  // namespace smg
