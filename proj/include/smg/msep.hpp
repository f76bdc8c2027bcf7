#pragma once

// m-connection between two nodes: a path whose collider inner nodes lie in
// C ∪ an(C) and whose non-collider inner nodes lie in M. Two engines are
// provided. Walk reachability runs in polynomial time over states
// (node, mark at arrival); path search enumerates simple paths and is exact on
// every graph.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "smg/graph.hpp"

namespace smg {

struct ConnectionQuery {
  NodeIndex source = 0;
  NodeIndex target = 0;
  NodeSet allowed_noncolliders;  // M
  NodeSet collider_enablers;     // C; an(C) is taken in the queried graph
};

// Marks carried by a connecting path at its two endpoints.
struct Signature {
  Mark at_source = Mark::Tail;
  Mark at_target = Mark::Tail;
  auto operator<=>(const Signature&) const = default;
};
using SignatureSet = std::set<Signature>;

// The edge between source and target with the same endpoint marks.
inline Edge generated_edge(NodeIndex source, NodeIndex target, Signature s) {
  return Edge::with_marks(source, s.at_source, target, s.at_target);
}
inline Signature signature_of(const Edge& e, NodeIndex source, NodeIndex target) {
  return {e.mark_at(source), e.mark_at(target)};
}

struct PathWitness {
  std::vector<NodeIndex> nodes;
  std::vector<Edge> edges;      // edges[k] joins nodes[k] and nodes[k+1]
  std::vector<bool> colliders;  // one flag per inner node

  Signature signature() const {
    return {edges.front().mark_at(nodes.front()), edges.back().mark_at(nodes.back())};
  }
};

struct PathEnumeration {
  std::vector<PathWitness> paths;
  bool truncated = false;
};

// Throws UnknownNode or OverlapError (source equals target, or an endpoint is an
// enabler).
void validate_query(const MixedGraph& g, const ConnectionQuery& q);

class ConnectionEngine {
 public:
  enum class Strategy : std::uint8_t { Automatic, WalkReachability, PathSearch };

  // Automatic picks walk reachability on ribbonless graphs and path search
  // elsewhere; walks can join two arrowheads at a node that no simple path
  // visits in the same way once ribbons are present.
  explicit ConnectionEngine(const MixedGraph& g, Strategy strategy = Strategy::Automatic);

  Strategy strategy() const { return strategy_; }

  bool exists(const ConnectionQuery& q) const;
  SignatureSet signatures(const ConnectionQuery& q) const;

  // A ⊥ B | C with M = V \ (A ∪ B ∪ C). Sets must be pairwise disjoint.
  bool separated(const NodeSet& a, const NodeSet& b, const NodeSet& c) const;

 private:
  // Core search from one source to any target; inner nodes never leave
  // `allowed_inner`. Stops at the first hit when `first_only`.
  SignatureSet walk(NodeIndex source, const NodeSet& targets, const NodeSet& m,
                    const NodeSet& enabled, bool first_only) const;
  SignatureSet paths(NodeIndex source, const NodeSet& targets, const NodeSet& m,
                     const NodeSet& enabled, bool first_only) const;
  SignatureSet search(NodeIndex source, const NodeSet& targets, const NodeSet& m,
                      const NodeSet& c, bool first_only) const;

  const MixedGraph& g_;
  Strategy strategy_;
  std::vector<std::vector<Edge>> incident_;
};

bool connecting_path_exists(const MixedGraph& g, const ConnectionQuery& q);

// Throws NotDisjoint when the sets overlap. Empty A or B is always separated.
bool m_separated(const MixedGraph& g, const NodeSet& a, const NodeSet& b, const NodeSet& c);

// Depth-first in canonical node order, then edge order.
PathEnumeration enumerate_connecting_paths(const MixedGraph& g, const ConnectionQuery& q,
                                           std::size_t limit = 1'000'000);
std::optional<PathWitness> find_connecting_path(const MixedGraph& g, const ConnectionQuery& q);

// Signatures of the m-connecting paths between i and j given M and C. Requires
// i, j outside M ∪ C.
SignatureSet endpoint_identical_connection(const MixedGraph& g, NodeIndex i, NodeIndex j,
                                           const NodeSet& m, const NodeSet& c,
                                           ConnectionEngine::Strategy strategy =
                                               ConnectionEngine::Strategy::Automatic);

}  // namespace smg
