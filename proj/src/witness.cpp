#include "smg/witness.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace smg {

namespace {

class FreshNames {
 public:
  explicit FreshNames(const MixedGraph& g) : taken_(g.labels().begin(), g.labels().end()) {}

  std::string next(const std::string& prefix, std::size_t& counter) {
    std::string name;
    do {
      name = prefix + std::to_string(++counter);
    } while (taken_.contains(name));
    taken_.insert(name);
    return name;
  }

 private:
  std::set<std::string> taken_;
};

// First arrow, in canonical order, that lies on a direction-preserving cycle.
std::optional<Edge> first_cycle_arrow(const MixedGraph& arrows) {
  for (const Edge& e : arrows.edges()) {
    if (descendants(arrows, NodeSet{e.to}).contains(e.from)) return e;
  }
  return std::nullopt;
}

}  // namespace

DagifyResult dagify(const MixedGraph& h) {
  if (!is_ribbonless(h)) throw Error(ErrorKind::NotRibbonless, "input graph contains a ribbon");
  FreshNames fresh(h);
  std::size_t m_count = 0;
  std::size_t c_count = 0;
  DagifyResult out;
  std::vector<LabeledEdge> edges;

  MixedGraph arrows(h.labels());
  for (const Edge& e : h.edges()) {
    const LabeledEdge le = h.labeled(e);
    switch (e.kind) {
      case EdgeKind::Line: {
        const std::string c = fresh.next("_c", c_count);
        edges.push_back({EdgeKind::Arrow, le.from, c});
        edges.push_back({EdgeKind::Arrow, le.to, c});
        out.conditioned.push_back(c);
        out.origin[c] = le;
        break;
      }
      case EdgeKind::Arc: {
        const std::string m = fresh.next("_m", m_count);
        edges.push_back({EdgeKind::Arrow, m, le.from});
        edges.push_back({EdgeKind::Arrow, m, le.to});
        out.marginalised.push_back(m);
        out.origin[m] = le;
        break;
      }
      case EdgeKind::Arrow:
        arrows.add_edge(e);
        break;
    }
  }
  while (auto e = first_cycle_arrow(arrows)) {
    arrows.remove_edge(*e);
    const LabeledEdge le = h.labeled(*e);
    const std::string c = fresh.next("_c", c_count);
    const std::string m = fresh.next("_m", m_count);
    edges.push_back({EdgeKind::Arrow, le.from, c});
    edges.push_back({EdgeKind::Arrow, m, c});
    edges.push_back({EdgeKind::Arrow, m, le.to});
    out.conditioned.push_back(c);
    out.marginalised.push_back(m);
    out.origin[c] = le;
    out.origin[m] = le;
  }
  for (const Edge& e : arrows.edges()) edges.push_back(arrows.labeled(e));

  std::vector<std::string> nodes = h.labels();
  nodes.insert(nodes.end(), out.marginalised.begin(), out.marginalised.end());
  nodes.insert(nodes.end(), out.conditioned.begin(), out.conditioned.end());
  out.dag = MixedGraph::make(std::move(nodes), edges);
  std::sort(out.marginalised.begin(), out.marginalised.end());
  std::sort(out.conditioned.begin(), out.conditioned.end());
  return out;
}

namespace {

// Depth-first search for primitive inducing paths from j to i. `visit` returns
// false to stop.
void search_pips(const MixedGraph& g, NodeIndex j, NodeIndex i,
                 const std::function<bool(const PrimitiveInducingPath&)>& visit) {
  const NodeSet anc = ancestors(g, NodeSet{i, j});
  PrimitiveInducingPath current;
  current.nodes.push_back(j);
  NodeSet on_path{j};
  bool stop = false;
  std::function<void(NodeIndex)> extend = [&](NodeIndex v) {
    for (const Edge& e : g.incident(v)) {
      if (stop) return;
      const NodeIndex w = e.other(v);
      if (on_path.contains(w)) continue;
      if (v != j) {
        // v is an inner node: collider and ancestor of an endpoint.
        if (current.edges.back().mark_at(v) != Mark::Head || e.mark_at(v) != Mark::Head) continue;
      }
      if (w != i && !anc.contains(w)) continue;
      current.nodes.push_back(w);
      current.edges.push_back(e);
      if (w == i) {
        if (current.edges.size() > 1 && !visit(current)) stop = true;
      } else {
        on_path.insert(w);
        extend(w);
        on_path.erase(w);
      }
      current.nodes.pop_back();
      current.edges.pop_back();
    }
  };
  extend(j);
}

}  // namespace

std::vector<PrimitiveInducingPath> primitive_inducing_paths(const MixedGraph& g, std::size_t limit) {
  std::vector<PrimitiveInducingPath> out;
  for (NodeIndex j = 0; j < g.size() && out.size() < limit; ++j) {
    for (NodeIndex i = j + 1; i < g.size() && out.size() < limit; ++i) {
      if (g.adjacent(i, j)) continue;
      search_pips(g, j, i, [&](const PrimitiveInducingPath& p) {
        out.push_back(p);
        return out.size() < limit;
      });
    }
  }
  return out;
}

bool has_primitive_inducing_path(const MixedGraph& g, NodeIndex j, NodeIndex i) {
  if (j == i || g.adjacent(i, j)) return false;
  bool found = false;
  search_pips(g, j, i, [&](const PrimitiveInducingPath&) {
    found = true;
    return false;
  });
  return found;
}

bool is_maximal(const MixedGraph& g) {
  for (NodeIndex j = 0; j < g.size(); ++j) {
    for (NodeIndex i = j + 1; i < g.size(); ++i) {
      if (has_primitive_inducing_path(g, j, i)) return false;
    }
  }
  return true;
}

bool is_maximal_by_definition(const MixedGraph& g, std::size_t bound) {
  const std::size_t n = g.size();
  if (n > bound || n > 30) throw Error(ErrorKind::TooLarge, "literal maximality check over " + std::to_string(n) + " nodes");
  const ConnectionEngine engine(g);
  for (NodeIndex j = 0; j < n; ++j) {
    for (NodeIndex i = j + 1; i < n; ++i) {
      if (g.adjacent(i, j)) continue;
      const std::vector<NodeIndex> others = (g.all() - NodeSet{i, j}).to_vector();
      bool separable = false;
      for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << others.size()) && !separable; ++mask) {
        NodeSet c;
        for (std::size_t k = 0; k < others.size(); ++k) {
          if (mask & (std::uint32_t{1} << k)) c.insert(others[k]);
        }
        separable = engine.separated(NodeSet{j}, NodeSet{i}, c);
      }
      if (!separable) return false;
    }
  }
  return true;
}

MaximalizeResult maximalize(const MixedGraph& g) {
  if (!is_ribbonless(g)) throw Error(ErrorKind::NotRibbonless, "input graph contains a ribbon");
  const ClassSet before = classify(g);
  MaximalizeResult out{g, 0, {}};
  while (true) {
    std::vector<Edge> additions;
    for (NodeIndex j = 0; j < out.graph.size(); ++j) {
      for (NodeIndex i = j + 1; i < out.graph.size(); ++i) {
        if (out.graph.adjacent(i, j)) continue;
        search_pips(out.graph, j, i, [&](const PrimitiveInducingPath& p) {
          additions.push_back(generated_edge(j, i, p.signature()));
          return false;
        });
      }
    }
    if (additions.empty()) break;
    ++out.iterations;
    for (const Edge& e : additions) out.graph.add_edge(e);
  }
  const ClassSet after = classify(out.graph);
  for (GraphClass c : {GraphClass::SG, GraphClass::AG}) {
    if (before.contains(c) && !after.contains(c)) {
      out.warnings.push_back("maximalized graph is no longer " + std::string(class_name(c)));
    }
  }
  return out;
}

}  // namespace smg
