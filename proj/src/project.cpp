#include "smg/project.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <random>

namespace smg {

namespace {

// How one edge of a V looks from its end node.
enum class Leg : std::uint8_t {
  IntoEnd,    // arrow pointing at the end node
  IntoInner,  // arrow pointing at the inner node
  Line,
  Arc,
};

Leg leg_of(const Edge& e, NodeIndex end, NodeIndex inner) {
  const Mark at_end = e.mark_at(end);
  const Mark at_inner = e.mark_at(inner);
  if (at_end == Mark::Head) return at_inner == Mark::Head ? Leg::Arc : Leg::IntoEnd;
  return at_inner == Mark::Head ? Leg::IntoInner : Leg::Line;
}

// Rows of the closure table, written with the legs of both sides.
struct Row {
  int id;
  Leg left;
  Leg right;
};
constexpr std::array<Row, 10> kRows{{
    {1, Leg::IntoEnd, Leg::IntoInner},  // i <- m <- j
    {2, Leg::IntoEnd, Leg::Line},       // i <- m -- j
    {3, Leg::Arc, Leg::Line},           // i <-> m -- j
    {4, Leg::IntoEnd, Leg::IntoEnd},    // i <- m -> j
    {5, Leg::IntoEnd, Leg::Arc},        // i <- m <-> j
    {6, Leg::Line, Leg::IntoInner},     // i -- m <- j
    {7, Leg::Line, Leg::Line},          // i -- m -- j
    {8, Leg::Arc, Leg::IntoInner},      // i <-> s <- j
    {9, Leg::Arc, Leg::Arc},            // i <-> s <-> j
    {10, Leg::IntoInner, Leg::IntoInner},  // i -> s <- j
}};

void warn(const ProjectionOptions& opts, std::string message) {
  if (opts.warnings) opts.warnings->push_back(std::move(message));
}

void record(ClosureTrace* trace, const MixedGraph& g, std::string rule, NodeIndex inner, const Edge& generated,
            std::optional<Edge> replaced = std::nullopt, bool merged = false) {
  if (!trace) return;
  TraceEntry t;
  t.rule = std::move(rule);
  t.inner = g.label(inner);
  t.generated = g.labeled(generated);
  if (replaced) t.replaced = g.labeled(*replaced);
  t.merged = merged;
  trace->push_back(std::move(t));
}

bool is_ancestor(const MixedGraph& g, NodeIndex k, NodeIndex i) { return ancestors(g, NodeSet{i}).contains(k); }

MixedGraph drop_nodes(const MixedGraph& g, const ResolvedSpec& spec) {
  return induced_subgraph(g, g.all() - spec.m - spec.c);
}

}  // namespace

ResolvedSpec resolve_spec(const MixedGraph& g, const ProjectionSpec& spec) {
  ResolvedSpec r;
  auto resolve = [&](const std::vector<std::string>& labels, NodeSet& into) {
    for (const auto& l : labels) {
      auto v = g.find(l);
      if (!v) throw Error(ErrorKind::SpecInvalid, "'" + l + "' is not a node of the graph");
      into.insert(*v);
    }
  };
  resolve(spec.marginalised, r.m);
  resolve(spec.conditioned, r.c);
  if (r.m.intersects(r.c)) throw Error(ErrorKind::SpecInvalid, "marginalised and conditioned sets overlap");
  return r;
}

std::string format_trace(const ClosureTrace& trace) {
  std::string out;
  for (const auto& t : trace) {
    out += "rule=" + t.rule + " inner=" + t.inner + " generated=" + compact_string(t.generated);
    if (t.replaced) out += " replaced=" + compact_string(*t.replaced);
    out += '\n';
  }
  return out;
}

MixedGraph replay_trace(const MixedGraph& g, const ClosureTrace& trace) {
  MixedGraph out = g;
  for (const auto& t : trace) {
    if (t.replaced) out.remove_edge(out.unlabeled(*t.replaced));
    out.add_edge(out.unlabeled(t.generated));
  }
  return out;
}

int closure_rule(const VConfiguration& v) {
  const Leg left = leg_of(v.first, v.end1, v.inner);
  const Leg right = leg_of(v.second, v.end2, v.inner);
  for (const Row& r : kRows) {
    if ((r.left == left && r.right == right) || (r.left == right && r.right == left)) return r.id;
  }
  return 0;
}

MixedGraph table1_closure(const MixedGraph& h, const ResolvedSpec& spec, const ClosureOptions& opts) {
  if (!(spec.m | spec.c).is_subset_of(h.all())) throw Error(ErrorKind::SpecInvalid, "spec refers to unknown nodes");
  if (spec.m.intersects(spec.c)) throw Error(ErrorKind::SpecInvalid, "marginalised and conditioned sets overlap");
  MixedGraph g = h;
  std::optional<std::mt19937_64> rng;
  if (opts.shuffle_seed) rng.emplace(*opts.shuffle_seed);

  bool changed = true;
  while (changed) {
    changed = false;
    NodeSet enabled = spec.c | ancestors(g, spec.c);
    std::vector<std::pair<int, VConfiguration>> candidates;
    for (const VConfiguration& v : v_configurations(g)) {
      const bool applies = v.is_collider() ? enabled.contains(v.inner) : spec.m.contains(v.inner);
      if (applies) candidates.emplace_back(closure_rule(v), v);
    }
    if (rng) {
      std::shuffle(candidates.begin(), candidates.end(), *rng);
    } else {
      std::stable_sort(candidates.begin(), candidates.end(),
                       [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    for (const auto& [rule, v] : candidates) {
      const Edge e = Edge::with_marks(v.end1, v.first.mark_at(v.end1), v.end2, v.second.mark_at(v.end2));
      if (!g.add_edge(e)) continue;
      changed = true;
      record(opts.trace, g, std::to_string(rule), v.inner, e);
      if (e.kind == EdgeKind::Arrow) enabled = spec.c | ancestors(g, spec.c);
    }
  }
  return g;
}

std::optional<ProjectionType> parse_projection_type(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "rg") return ProjectionType::RG;
  if (lower == "sg") return ProjectionType::SG;
  if (lower == "ag") return ProjectionType::AG;
  return std::nullopt;
}

MixedGraph project_rg(const MixedGraph& h, const ProjectionSpec& spec, const ProjectionOptions& opts) {
  const ResolvedSpec r = resolve_spec(h, spec);
  if (!is_ribbonless(h)) {
    if (opts.enforce_class) throw Error(ErrorKind::NotRibbonless, "input graph contains a ribbon");
    warn(opts, "input graph is not ribbonless; the result need not represent the projected model");
  }
  const MixedGraph closed = table1_closure(h, r, {opts.trace, opts.shuffle_seed});
  return drop_nodes(closed, r);
}

MixedGraph rg_to_sg(const MixedGraph& h, const NodeSet& anc_c, ClosureTrace* trace) {
  if (!anc_c.is_subset_of(h.all())) throw Error(ErrorKind::UnknownNode, "ancestor set refers to unknown nodes");
  MixedGraph g = h;
  for (const Edge& e : h.edges()) {
    if (e.kind == EdgeKind::Line) continue;
    const Mark at_from = anc_c.contains(e.from) ? Mark::Tail : e.mark_at(e.from);
    const Mark at_to = anc_c.contains(e.to) ? Mark::Tail : e.mark_at(e.to);
    const Edge repl = Edge::with_marks(e.from, at_from, e.to, at_to);
    if (repl == e) continue;
    g.remove_edge(e);
    const bool added = g.add_edge(repl);
    const NodeIndex losing = anc_c.contains(e.to) ? e.to : e.from;
    record(trace, g, "sg-step-2", losing, repl, e, !added);
  }
  return g;
}

MixedGraph rg_to_sg(const MixedGraph& h, const std::vector<std::string>& anc_c, ClosureTrace* trace) {
  return rg_to_sg(h, h.set_of(anc_c), trace);
}

MixedGraph project_sg(const MixedGraph& h, const ProjectionSpec& spec, const ProjectionOptions& opts) {
  const ResolvedSpec r = resolve_spec(h, spec);
  if (!is_summary_graph(h)) {
    if (opts.enforce_class) throw Error(ErrorKind::NotSummaryGraph, "input graph is not a summary graph");
    warn(opts, "input graph is not a summary graph; the result need not be one");
  }
  const MixedGraph closed = table1_closure(h, r, {opts.trace, opts.shuffle_seed});
  const MixedGraph stripped = rg_to_sg(closed, ancestors(closed, r.c), opts.trace);
  return drop_nodes(stripped, r);
}

MixedGraph sg_to_ag(const MixedGraph& h, ClosureTrace* trace, bool enforce_class) {
  if (enforce_class && !is_summary_graph(h)) throw Error(ErrorKind::NotSummaryGraph, "input graph is not a summary graph");
  MixedGraph g = h;
  bool outer = true;
  while (outer) {
    outer = false;
    // Step 2: j -> k <-> i or j <-> k <-> i with k an ancestor of i.
    bool changed = true;
    while (changed) {
      changed = false;
      for (const VConfiguration& v : v_configurations(g)) {
        for (int side = 0; side < 2; ++side) {
          const NodeIndex j = side == 0 ? v.end1 : v.end2;
          const NodeIndex i = side == 0 ? v.end2 : v.end1;
          const Edge& jk = side == 0 ? v.first : v.second;
          const Edge& ki = side == 0 ? v.second : v.first;
          if (ki.kind != EdgeKind::Arc || jk.mark_at(v.inner) != Mark::Head || jk.kind == EdgeKind::Line) continue;
          if (!is_ancestor(g, v.inner, i)) continue;
          const Edge e = jk.kind == EdgeKind::Arrow ? Edge::arrow(j, i) : Edge::arc(j, i);
          if (g.add_edge(e)) {
            changed = outer = true;
            record(trace, g, "ag-step-2", v.inner, e);
          }
        }
      }
    }
    // Step 3: an arc j <-> i with j an ancestor of i becomes j -> i.
    changed = true;
    while (changed) {
      changed = false;
      for (const Edge& e : g.edges()) {
        if (e.kind != EdgeKind::Arc) continue;
        for (auto [j, i] : {std::pair{e.from, e.to}, std::pair{e.to, e.from}}) {
          if (!is_ancestor(g, j, i)) continue;
          g.remove_edge(e);
          const Edge a = Edge::arrow(j, i);
          const bool added = g.add_edge(a);
          record(trace, g, "ag-step-3", i, a, e, !added);
          changed = outer = true;
          break;
        }
        if (changed) break;
      }
    }
  }
  return g;
}

MixedGraph project_ag(const MixedGraph& h, const ProjectionSpec& spec, const ProjectionOptions& opts) {
  if (!is_ancestral_graph(h)) {
    if (opts.enforce_class) throw Error(ErrorKind::NotAncestralGraph, "input graph is not ancestral");
    warn(opts, "input graph is not ancestral; the result need not be one");
  }
  ProjectionOptions inner = opts;
  inner.enforce_class = false;
  inner.warnings = nullptr;
  const MixedGraph sg = project_sg(h, spec, inner);
  return sg_to_ag(sg, opts.trace, false);
}

MixedGraph project(ProjectionType type, const MixedGraph& h, const ProjectionSpec& spec,
                   const ProjectionOptions& opts) {
  switch (type) {
    case ProjectionType::RG: return project_rg(h, spec, opts);
    case ProjectionType::SG: return project_sg(h, spec, opts);
    case ProjectionType::AG: return project_ag(h, spec, opts);
  }
  return h;
}

MixedGraph rg_to_sg_heuristic(const MixedGraph& h) {
  MixedGraph g = h;
  while (true) {
    NodeSet tainted = line_endpoints(g) | cyclic_nodes(g);
    tainted |= ancestors(g, tainted);
    MixedGraph next = rg_to_sg(g, tainted);
    if (next == g) return g;
    g = std::move(next);
  }
}

}  // namespace smg
