#include "oracles.hpp"

#include <functional>

namespace oracle {

using smg::Mark;

std::vector<std::vector<bool>> arrow_reachability(const MixedGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (NodeIndex u = 0; u < n; ++u)
    for (NodeIndex v = 0; v < n; ++v)
      if (u != v && g.has_arrow(u, v)) r[u][v] = true;
  // Warshall
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t u = 0; u < n; ++u)
      if (r[u][k])
        for (std::size_t v = 0; v < n; ++v)
          if (r[k][v]) r[u][v] = true;
  return r;
}

NodeSet strict_ancestors(const MixedGraph& g, const NodeSet& s) {
  const auto r = arrow_reachability(g);
  NodeSet out;
  for (NodeIndex u = 0; u < g.size(); ++u)
    for (NodeIndex v : s)
      if (r[u][v]) out.insert(u);
  return out;
}

NodeSet ancestors_inclusive(const MixedGraph& g, const NodeSet& s) { return strict_ancestors(g, s) | s; }

NodeSet on_cycle(const MixedGraph& g) {
  const auto r = arrow_reachability(g);
  NodeSet out;
  for (NodeIndex u = 0; u < g.size(); ++u)
    if (r[u][u]) out.insert(u);
  return out;
}

std::vector<Step> steps_from(const MixedGraph& g, NodeIndex v) {
  std::vector<Step> out;
  for (NodeIndex w = 0; w < g.size(); ++w) {
    if (w == v) continue;
    if (g.has_line(v, w)) out.push_back({w, Mark::Tail, Mark::Tail});
    if (g.has_arc(v, w)) out.push_back({w, Mark::Head, Mark::Head});
    if (g.has_arrow(v, w)) out.push_back({w, Mark::Tail, Mark::Head});
    if (g.has_arrow(w, v)) out.push_back({w, Mark::Head, Mark::Tail});
  }
  return out;
}

std::set<RibbonTriple> ribbons(const MixedGraph& g) {
  const auto r = arrow_reachability(g);
  const NodeSet cyc = on_cycle(g);
  NodeSet line_end;
  for (NodeIndex u = 0; u < g.size(); ++u)
    for (NodeIndex v = 0; v < g.size(); ++v)
      if (u != v && g.has_line(u, v)) line_end.insert(u);
  std::set<RibbonTriple> out;
  for (NodeIndex i = 0; i < g.size(); ++i) {
    bool tainted = line_end.contains(i) || cyc.contains(i);
    for (NodeIndex d = 0; d < g.size() && !tainted; ++d)
      if (r[i][d] && (line_end.contains(d) || cyc.contains(d))) tainted = true;
    if (!tainted) continue;
    const auto st = steps_from(g, i);
    for (const Step& s1 : st) {
      for (const Step& s2 : st) {
        if (s1.to >= s2.to) continue;
        // Both edges must point into i.
        if (s1.at_from != Mark::Head || s2.at_from != Mark::Head) continue;
        if (g.contains_marks(s1.to, s1.at_to, s2.to, s2.at_to)) continue;
        out.insert({s1.to, i, s2.to, s1.at_to, s2.at_to});
      }
    }
  }
  return out;
}

smg::SignatureSet path_signatures(const MixedGraph& g, NodeIndex source, NodeIndex target, const NodeSet& m,
                                  const NodeSet& c) {
  const NodeSet enablers = ancestors_inclusive(g, c);
  smg::SignatureSet out;
  std::vector<bool> used(g.size(), false);
  used[source] = true;
  std::function<void(NodeIndex, Mark, Mark)> dfs = [&](NodeIndex v, Mark arrival, Mark start) {
    for (const Step& s : steps_from(g, v)) {
      if (used[s.to]) continue;
      if (v != source) {
        const bool collider = arrival == Mark::Head && s.at_from == Mark::Head;
        if (collider ? !enablers.contains(v) : !m.contains(v)) continue;
      }
      const Mark st = v == source ? s.at_from : start;
      if (s.to == target) {
        out.insert({st, s.at_to});
        continue;
      }
      used[s.to] = true;
      dfs(s.to, s.at_to, st);
      used[s.to] = false;
    }
  };
  dfs(source, Mark::Tail, Mark::Tail);
  return out;
}

smg::SignatureSet walk_signatures(const MixedGraph& g, NodeIndex source, NodeIndex target, const NodeSet& m,
                                  const NodeSet& enablers) {
  // State: (previous node, current node, marks of the arriving edge, mark at
  // source). The arriving edge is identified by its endpoints and marks.
  struct State {
    NodeIndex prev, cur;
    Mark arrival, departure, start;
    auto operator<=>(const State&) const = default;
  };
  std::set<State> seen;
  std::vector<State> stack;
  smg::SignatureSet out;
  for (const Step& s : steps_from(g, source)) {
    if (s.to == target) out.insert({s.at_from, s.at_to});
    const State st{source, s.to, s.at_to, s.at_from, s.at_from};
    if (seen.insert(st).second) stack.push_back(st);
  }
  while (!stack.empty()) {
    const State st = stack.back();
    stack.pop_back();
    for (const Step& s : steps_from(g, st.cur)) {
      if (s.to == st.prev && s.at_from == st.arrival && s.at_to == st.departure) continue;
      const bool collider = st.arrival == Mark::Head && s.at_from == Mark::Head;
      if (collider ? !enablers.contains(st.cur) : !m.contains(st.cur)) continue;
      if (s.to == target) out.insert({st.start, s.at_to});
      const State next{st.cur, s.to, s.at_to, s.at_from, st.start};
      if (seen.insert(next).second) stack.push_back(next);
    }
  }
  return out;
}

bool d_separated_moral(const MixedGraph& dag, const NodeSet& a, const NodeSet& b, const NodeSet& c) {
  const NodeSet keep = ancestors_inclusive(dag, a | b | c);
  const std::size_t n = dag.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (NodeIndex u : keep) {
    for (NodeIndex v : keep) {
      if (dag.has_arrow(u, v)) adj[u][v] = adj[v][u] = true;
    }
  }
  // Marry parents.
  for (NodeIndex ch : keep) {
    for (NodeIndex p : keep) {
      for (NodeIndex q : keep) {
        if (p != q && dag.has_arrow(p, ch) && dag.has_arrow(q, ch)) adj[p][q] = true;
      }
    }
  }
  std::vector<bool> seen(n, false);
  std::vector<NodeIndex> stack;
  for (NodeIndex s : a) {
    seen[s] = true;
    stack.push_back(s);
  }
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    stack.pop_back();
    if (b.contains(v)) return false;
    for (NodeIndex w : keep) {
      if (adj[v][w] && !seen[w] && !c.contains(w)) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return true;
}

bool m_separated_paths(const MixedGraph& g, const NodeSet& a, const NodeSet& b, const NodeSet& c) {
  const NodeSet m = g.all() - a - b - c;
  for (NodeIndex s : a)
    for (NodeIndex t : b)
      if (!path_signatures(g, s, t, m, c).empty()) return false;
  return true;
}

smg::IndependenceModel independence_model(const MixedGraph& g) {
  smg::IndependenceModel j;
  j.ground = g.labels();
  const std::size_t n = g.size();
  auto to_set = [](std::uint64_t mask) {
    NodeSet s;
    for (NodeIndex k = 0; k < 64; ++k)
      if (mask & (std::uint64_t{1} << k)) s.insert(k);
    return s;
  };
  // Assign each node to A, B, C or none: 4^n labelings.
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= 4;
  for (std::size_t code = 0; code < total; ++code) {
    std::uint64_t a = 0, b = 0, c = 0;
    std::size_t x = code;
    for (std::size_t k = 0; k < n; ++k, x /= 4) {
      if (x % 4 == 1) a |= std::uint64_t{1} << k;
      if (x % 4 == 2) b |= std::uint64_t{1} << k;
      if (x % 4 == 3) c |= std::uint64_t{1} << k;
    }
    if (!a || !b) continue;
    if (m_separated_paths(g, to_set(a), to_set(b), to_set(c))) {
      j.statements.insert(smg::IndependenceStatement::canonical(a, b, c));
    }
  }
  return j;
}

std::vector<MixedGraph> dags_on(const std::vector<std::string>& labels) {
  const MixedGraph empty(labels);
  const std::size_t n = empty.size();
  std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
  for (NodeIndex u = 0; u < n; ++u)
    for (NodeIndex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::size_t total = 1;
  for (std::size_t k = 0; k < pairs.size(); ++k) total *= 3;
  std::vector<MixedGraph> out;
  for (std::size_t code = 0; code < total; ++code) {
    MixedGraph g = empty;
    std::size_t x = code;
    for (const auto& [u, v] : pairs) {
      if (x % 3 == 1) g.add_edge(smg::Edge::arrow(u, v));
      if (x % 3 == 2) g.add_edge(smg::Edge::arrow(v, u));
      x /= 3;
    }
    if (on_cycle(g).empty()) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace oracle
