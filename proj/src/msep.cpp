#include "smg/msep.hpp"

#include <array>
#include <functional>

namespace smg {

namespace {

bool is_collider(Mark arrival, const Edge& leaving, NodeIndex at) {
  return arrival == Mark::Head && leaving.mark_at(at) == Mark::Head;
}

int mark_bit(Mark m) { return m == Mark::Head ? 1 : 0; }

void check_nodes(const MixedGraph& g, const NodeSet& s) {
  if (!s.is_subset_of(g.all())) throw Error(ErrorKind::UnknownNode, "node set refers to nodes outside the graph");
}

}  // namespace

void validate_query(const MixedGraph& g, const ConnectionQuery& q) {
  if (q.source >= g.size() || q.target >= g.size()) throw Error(ErrorKind::UnknownNode, "query endpoint outside the graph");
  check_nodes(g, q.allowed_noncolliders);
  check_nodes(g, q.collider_enablers);
  if (q.source == q.target) throw Error(ErrorKind::OverlapError, "source and target coincide");
  if (q.collider_enablers.contains(q.source) || q.collider_enablers.contains(q.target)) {
    throw Error(ErrorKind::OverlapError, "query endpoint is in the conditioning set");
  }
}

ConnectionEngine::ConnectionEngine(const MixedGraph& g, Strategy strategy) : g_(g), strategy_(strategy) {
  if (strategy_ == Strategy::Automatic) {
    strategy_ = is_ribbonless(g) ? Strategy::WalkReachability : Strategy::PathSearch;
  }
  incident_.resize(g.size());
  for (NodeIndex v = 0; v < g.size(); ++v) incident_[v] = g.incident(v);
}

SignatureSet ConnectionEngine::walk(NodeIndex source, const NodeSet& targets, const NodeSet& m,
                                    const NodeSet& enabled, bool first_only) const {
  SignatureSet found;
  // visited[v] bit (start mark * 2 + arrival mark)
  std::vector<std::uint8_t> visited(g_.size(), 0);
  struct State {
    NodeIndex node;
    Mark arrival;
    Mark start;
  };
  std::vector<State> stack;
  auto arrive = [&](NodeIndex v, Mark arrival, Mark start) {
    const std::uint8_t bit = std::uint8_t(1u << (mark_bit(start) * 2 + mark_bit(arrival)));
    if (targets.contains(v)) {
      found.insert(Signature{start, arrival});
      return;
    }
    if (v == source || (visited[v] & bit)) return;
    visited[v] |= bit;
    stack.push_back({v, arrival, start});
  };
  for (const Edge& e : incident_[source]) {
    arrive(e.other(source), e.mark_at(e.other(source)), e.mark_at(source));
    if (first_only && !found.empty()) return found;
  }
  while (!stack.empty()) {
    const State s = stack.back();
    stack.pop_back();
    for (const Edge& e : incident_[s.node]) {
      const bool ok = is_collider(s.arrival, e, s.node) ? enabled.contains(s.node) : m.contains(s.node);
      if (!ok) continue;
      const NodeIndex w = e.other(s.node);
      arrive(w, e.mark_at(w), s.start);
      if (first_only && !found.empty()) return found;
    }
  }
  return found;
}

SignatureSet ConnectionEngine::paths(NodeIndex source, const NodeSet& targets, const NodeSet& m,
                                     const NodeSet& enabled, bool first_only) const {
  SignatureSet found;
  NodeSet on_path{source};
  bool done = false;
  // Extends a path that reached v with `arrival` at v.
  std::function<void(NodeIndex, Mark, Mark)> extend = [&](NodeIndex v, Mark arrival, Mark start) {
    for (const Edge& e : incident_[v]) {
      if (done) return;
      const NodeIndex w = e.other(v);
      if (on_path.contains(w)) continue;
      const bool ok = is_collider(arrival, e, v) ? enabled.contains(v) : m.contains(v);
      if (!ok) continue;
      if (targets.contains(w)) {
        found.insert(Signature{start, e.mark_at(w)});
        if (first_only || found.size() == 4) done = true;
        continue;
      }
      on_path.insert(w);
      extend(w, e.mark_at(w), start);
      on_path.erase(w);
    }
  };
  for (const Edge& e : incident_[source]) {
    if (done) break;
    const NodeIndex w = e.other(source);
    if (targets.contains(w)) {
      found.insert(Signature{e.mark_at(source), e.mark_at(w)});
      if (first_only || found.size() == 4) done = true;
      continue;
    }
    on_path.insert(w);
    extend(w, e.mark_at(w), e.mark_at(source));
    on_path.erase(w);
  }
  return found;
}

SignatureSet ConnectionEngine::search(NodeIndex source, const NodeSet& targets, const NodeSet& m,
                                      const NodeSet& c, bool first_only) const {
  const NodeSet enabled = c | ancestors(g_, c);
  return strategy_ == Strategy::PathSearch ? paths(source, targets, m, enabled, first_only)
                                           : walk(source, targets, m, enabled, first_only);
}

bool ConnectionEngine::exists(const ConnectionQuery& q) const {
  validate_query(g_, q);
  return !search(q.source, NodeSet{q.target}, q.allowed_noncolliders - NodeSet{q.source, q.target},
                 q.collider_enablers, true)
              .empty();
}

SignatureSet ConnectionEngine::signatures(const ConnectionQuery& q) const {
  validate_query(g_, q);
  return search(q.source, NodeSet{q.target}, q.allowed_noncolliders - NodeSet{q.source, q.target},
                q.collider_enablers, false);
}

bool ConnectionEngine::separated(const NodeSet& a, const NodeSet& b, const NodeSet& c) const {
  check_nodes(g_, a);
  check_nodes(g_, b);
  check_nodes(g_, c);
  if (a.intersects(b) || a.intersects(c) || b.intersects(c)) {
    throw Error(ErrorKind::NotDisjoint, "separation sets are not pairwise disjoint");
  }
  if (a.empty() || b.empty()) return true;
  // A path through another member of A or B contains a shorter connecting path
  // between A and B, so those nodes never need to be crossed.
  const NodeSet m = g_.all() - a - b - c;
  for (NodeIndex s : a) {
    if (!search(s, b, m, c, true).empty()) return false;
  }
  return true;
}

bool connecting_path_exists(const MixedGraph& g, const ConnectionQuery& q) {
  return ConnectionEngine(g).exists(q);
}

bool m_separated(const MixedGraph& g, const NodeSet& a, const NodeSet& b, const NodeSet& c) {
  return ConnectionEngine(g).separated(a, b, c);
}

PathEnumeration enumerate_connecting_paths(const MixedGraph& g, const ConnectionQuery& q, std::size_t limit) {
  validate_query(g, q);
  const NodeSet enabled = q.collider_enablers | ancestors(g, q.collider_enablers);
  const NodeSet& m = q.allowed_noncolliders;
  PathEnumeration result;
  PathWitness current;
  current.nodes.push_back(q.source);
  NodeSet on_path{q.source};

  std::function<void(NodeIndex)> extend = [&](NodeIndex v) {
    for (const Edge& e : g.incident(v)) {
      if (result.truncated) return;
      const NodeIndex w = e.other(v);
      if (on_path.contains(w)) continue;
      if (v != q.source) {
        const bool collider = current.edges.back().mark_at(v) == Mark::Head && e.mark_at(v) == Mark::Head;
        if (!(collider ? enabled.contains(v) : m.contains(v))) continue;
        current.colliders.push_back(collider);
      }
      current.nodes.push_back(w);
      current.edges.push_back(e);
      if (w == q.target) {
        if (result.paths.size() >= limit) {
          result.truncated = true;
        } else {
          result.paths.push_back(current);
        }
      } else {
        on_path.insert(w);
        extend(w);
        on_path.erase(w);
      }
      current.nodes.pop_back();
      current.edges.pop_back();
      if (v != q.source) current.colliders.pop_back();
    }
  };
  extend(q.source);
  return result;
}

std::optional<PathWitness> find_connecting_path(const MixedGraph& g, const ConnectionQuery& q) {
  auto all = enumerate_connecting_paths(g, q, 1);
  if (all.paths.empty()) return std::nullopt;
  return all.paths.front();
}

SignatureSet endpoint_identical_connection(const MixedGraph& g, NodeIndex i, NodeIndex j, const NodeSet& m,
                                           const NodeSet& c, ConnectionEngine::Strategy strategy) {
  if (m.intersects(c)) throw Error(ErrorKind::NotDisjoint, "M and C overlap");
  if (m.contains(i) || m.contains(j)) throw Error(ErrorKind::OverlapError, "endpoint is in the marginalisation set");
  return ConnectionEngine(g, strategy).signatures(ConnectionQuery{i, j, m, c});
}

}  // namespace smg
