#include "smg/graph.hpp"

#include <algorithm>
#include <cctype>

namespace smg {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::LoopEdge: return "LoopEdge";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::InvalidLabel: return "InvalidLabel";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::UndeclaredNode: return "UndeclaredNode";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::OverlapError: return "OverlapError";
    case ErrorKind::NotDisjoint: return "NotDisjoint";
    case ErrorKind::NotInGround: return "NotInGround";
    case ErrorKind::GroundMismatch: return "GroundMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::SpecInvalid: return "SpecInvalid";
    case ErrorKind::NotRibbonless: return "NotRibbonless";
    case ErrorKind::NotSummaryGraph: return "NotSummaryGraph";
    case ErrorKind::NotAncestralGraph: return "NotAncestralGraph";
  }
  return "Error";
}

std::string_view edge_operator(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Line: return "--";
    case EdgeKind::Arc: return "<->";
    case EdgeKind::Arrow: return "->";
  }
  return "?";
}

Edge Edge::with_marks(NodeIndex u, Mark at_u, NodeIndex v, Mark at_v) {
  if (at_u == Mark::Tail && at_v == Mark::Tail) return line(u, v);
  if (at_u == Mark::Head && at_v == Mark::Head) return arc(u, v);
  return at_v == Mark::Head ? arrow(u, v) : arrow(v, u);
}

std::string to_string(const LabeledEdge& e) {
  return e.from + " " + std::string(edge_operator(e.kind)) + " " + e.to;
}

std::string compact_string(const LabeledEdge& e) {
  return e.from + std::string(edge_operator(e.kind)) + e.to;
}

bool is_valid_label(std::string_view label) {
  if (label.empty()) return false;
  return std::all_of(label.begin(), label.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

// ---- MixedGraph ----------------------------------------------------------------

MixedGraph::MixedGraph(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
  if (labels_.size() > kMaxNodes) {
    throw Error(ErrorKind::TooLarge, "graph has " + std::to_string(labels_.size()) +
                                         " nodes; the limit is " + std::to_string(kMaxNodes));
  }
  for (const auto& l : labels_) {
    if (!is_valid_label(l)) throw Error(ErrorKind::InvalidLabel, "invalid node label '" + l + "'");
  }
  cells_.assign(labels_.size() * labels_.size(), 0);
}

MixedGraph MixedGraph::make(std::vector<std::string> nodes, const std::vector<LabeledEdge>& edges) {
  MixedGraph g(std::move(nodes));
  for (const auto& e : edges) g.add_edge(e);
  return g;
}

std::optional<NodeIndex> MixedGraph::find(std::string_view label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<NodeIndex>(it - labels_.begin());
}

NodeIndex MixedGraph::index_of(std::string_view label) const {
  if (auto v = find(label)) return *v;
  throw Error(ErrorKind::UnknownNode, "unknown node '" + std::string(label) + "'");
}

void MixedGraph::check_node(NodeIndex v) const {
  if (v >= size()) throw Error(ErrorKind::UnknownNode, "node index " + std::to_string(v) + " out of range");
}

bool MixedGraph::contains(const Edge& e) const {
  if (e.from >= size() || e.to >= size() || e.from == e.to) return false;
  switch (e.kind) {
    case EdgeKind::Line: return has_line(e.from, e.to);
    case EdgeKind::Arc: return has_arc(e.from, e.to);
    case EdgeKind::Arrow: return has_arrow(e.from, e.to);
  }
  return false;
}

bool MixedGraph::add_edge(const Edge& e) {
  check_node(e.from);
  check_node(e.to);
  if (e.from == e.to) throw Error(ErrorKind::LoopEdge, "loop at node '" + label(e.from) + "'");
  if (contains(e)) return false;
  switch (e.kind) {
    case EdgeKind::Line:
      cell(e.from, e.to) |= kLineBit;
      cell(e.to, e.from) |= kLineBit;
      break;
    case EdgeKind::Arc:
      cell(e.from, e.to) |= kArcBit;
      cell(e.to, e.from) |= kArcBit;
      break;
    case EdgeKind::Arrow:
      cell(e.from, e.to) |= kArrowBit;
      break;
  }
  return true;
}

bool MixedGraph::remove_edge(const Edge& e) {
  if (!contains(e)) return false;
  switch (e.kind) {
    case EdgeKind::Line:
      cell(e.from, e.to) &= std::uint8_t(~kLineBit);
      cell(e.to, e.from) &= std::uint8_t(~kLineBit);
      break;
    case EdgeKind::Arc:
      cell(e.from, e.to) &= std::uint8_t(~kArcBit);
      cell(e.to, e.from) &= std::uint8_t(~kArcBit);
      break;
    case EdgeKind::Arrow:
      cell(e.from, e.to) &= std::uint8_t(~kArrowBit);
      break;
  }
  return true;
}

void MixedGraph::add_edge(const LabeledEdge& e) {
  const NodeIndex u = index_of(e.from);
  const NodeIndex v = index_of(e.to);
  add_edge(Edge::make(e.kind, u, v));
}

std::vector<Edge> MixedGraph::edges() const {
  std::vector<Edge> out;
  const std::size_t n = size();
  for (EdgeKind kind : {EdgeKind::Line, EdgeKind::Arc}) {
    for (NodeIndex u = 0; u < n; ++u) {
      for (NodeIndex v = u + 1; v < n; ++v) {
        if (contains(Edge{kind, u, v})) out.push_back(Edge{kind, u, v});
      }
    }
  }
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = 0; v < n; ++v) {
      if (has_arrow(u, v)) out.push_back(Edge::arrow(u, v));
    }
  }
  return out;
}

std::size_t MixedGraph::edge_count() const {
  std::size_t count = 0;
  const std::size_t n = size();
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = 0; v < n; ++v) {
      const auto c = cell(u, v);
      if (c & kArrowBit) ++count;
      if (u < v) count += ((c & kLineBit) ? 1 : 0) + ((c & kArcBit) ? 1 : 0);
    }
  }
  return count;
}

std::vector<Edge> MixedGraph::between(NodeIndex u, NodeIndex v) const {
  std::vector<Edge> out;
  if (u == v) return out;
  const NodeIndex lo = std::min(u, v);
  const NodeIndex hi = std::max(u, v);
  if (has_line(lo, hi)) out.push_back(Edge::line(lo, hi));
  if (has_arc(lo, hi)) out.push_back(Edge::arc(lo, hi));
  if (has_arrow(lo, hi)) out.push_back(Edge::arrow(lo, hi));
  if (has_arrow(hi, lo)) out.push_back(Edge::arrow(hi, lo));
  return out;
}

std::vector<Edge> MixedGraph::incident(NodeIndex v) const {
  check_node(v);
  std::vector<Edge> out;
  for (NodeIndex u = 0; u < size(); ++u) {
    if (u == v || !adjacent(u, v)) continue;
    for (const Edge& e : between(v, u)) out.push_back(e);
  }
  return out;
}

NodeSet MixedGraph::set_of(std::span<const std::string> labels) const {
  NodeSet s;
  for (const auto& l : labels) s.insert(index_of(l));
  return s;
}

NodeSet MixedGraph::set_of(std::initializer_list<std::string_view> labels) const {
  NodeSet s;
  for (auto l : labels) s.insert(index_of(l));
  return s;
}

std::vector<std::string> MixedGraph::labels_of(const NodeSet& s) const {
  std::vector<std::string> out;
  for (NodeIndex v : s) out.push_back(label(v));
  return out;
}

// ---- structural queries --------------------------------------------------------

NodeSet parents(const MixedGraph& g, NodeIndex v) {
  g.label(v);
  NodeSet s;
  for (NodeIndex u = 0; u < g.size(); ++u) {
    if (u != v && g.has_arrow(u, v)) s.insert(u);
  }
  return s;
}

NodeSet children(const MixedGraph& g, NodeIndex v) {
  g.label(v);
  NodeSet s;
  for (NodeIndex u = 0; u < g.size(); ++u) {
    if (u != v && g.has_arrow(v, u)) s.insert(u);
  }
  return s;
}

NodeSet neighbours(const MixedGraph& g, NodeIndex v) {
  g.label(v);
  NodeSet s;
  for (NodeIndex u = 0; u < g.size(); ++u) {
    if (u != v && g.has_line(u, v)) s.insert(u);
  }
  return s;
}

NodeSet spouses(const MixedGraph& g, NodeIndex v) {
  g.label(v);
  NodeSet s;
  for (NodeIndex u = 0; u < g.size(); ++u) {
    if (u != v && g.has_arc(u, v)) s.insert(u);
  }
  return s;
}

namespace {

// Nodes reachable from `start` by one or more arrows, followed forwards or backwards.
NodeSet arrow_closure(const MixedGraph& g, const NodeSet& start, bool backwards) {
  const std::size_t n = g.size();
  NodeSet reached;
  std::vector<NodeIndex> stack(start.begin(), start.end());
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    stack.pop_back();
    for (NodeIndex u = 0; u < n; ++u) {
      const bool step = backwards ? g.has_arrow(u, v) : g.has_arrow(v, u);
      if (step && !reached.contains(u)) {
        reached.insert(u);
        stack.push_back(u);
      }
    }
  }
  return reached;
}

void check_subset(const MixedGraph& g, const NodeSet& s) {
  if (!s.is_subset_of(g.all())) throw Error(ErrorKind::UnknownNode, "node set refers to nodes outside the graph");
}

}  // namespace

NodeSet ancestors(const MixedGraph& g, const NodeSet& targets) {
  check_subset(g, targets);
  return arrow_closure(g, targets, true);
}

NodeSet descendants(const MixedGraph& g, const NodeSet& sources) {
  check_subset(g, sources);
  return arrow_closure(g, sources, false);
}

NodeSet cyclic_nodes(const MixedGraph& g) {
  NodeSet out;
  for (NodeIndex v = 0; v < g.size(); ++v) {
    if (arrow_closure(g, NodeSet{v}, true).contains(v)) out.insert(v);
  }
  return out;
}

NodeSet line_endpoints(const MixedGraph& g) {
  NodeSet out;
  for (NodeIndex u = 0; u < g.size(); ++u) {
    for (NodeIndex v = u + 1; v < g.size(); ++v) {
      if (g.has_line(u, v)) {
        out.insert(u);
        out.insert(v);
      }
    }
  }
  return out;
}

MixedGraph induced_subgraph(const MixedGraph& g, const NodeSet& keep) {
  check_subset(g, keep);
  MixedGraph sub(g.labels_of(keep));
  // Kept nodes retain their relative order, so indices map monotonically.
  std::vector<NodeIndex> to_sub(g.size(), kMaxNodes);
  NodeIndex next = 0;
  for (NodeIndex v : keep) to_sub[v] = next++;
  for (const Edge& e : g.edges()) {
    if (keep.contains(e.from) && keep.contains(e.to)) {
      sub.add_edge(Edge{e.kind, to_sub[e.from], to_sub[e.to]});
    }
  }
  return sub;
}

std::vector<VConfiguration> v_configurations(const MixedGraph& g) {
  std::vector<VConfiguration> out;
  for (NodeIndex t = 0; t < g.size(); ++t) {
    const auto inc = g.incident(t);
    for (std::size_t a = 0; a < inc.size(); ++a) {
      for (std::size_t b = a + 1; b < inc.size(); ++b) {
        const NodeIndex x = inc[a].other(t);
        const NodeIndex y = inc[b].other(t);
        if (x == y) continue;
        // incident() is sorted by the other endpoint, so x < y here.
        out.push_back(VConfiguration{x, t, y, inc[a], inc[b]});
      }
    }
  }
  return out;
}

namespace {

// Condition 1 of the ribbon definition, as its three cases. Orients the mixed
// case so that `first` is the arrow.
bool lacks_endpoint_identical_edge(const MixedGraph& g, VConfiguration& v) {
  const EdgeKind k1 = v.first.kind;
  const EdgeKind k2 = v.second.kind;
  if (k1 == EdgeKind::Arc && k2 == EdgeKind::Arc) return !g.has_arc(v.end1, v.end2);
  if (k1 == EdgeKind::Arrow && k2 == EdgeKind::Arrow) return !g.has_line(v.end1, v.end2);
  if (k1 == EdgeKind::Arc) {
    std::swap(v.end1, v.end2);
    std::swap(v.first, v.second);
  }
  return !g.has_arrow(v.end1, v.end2);
}

template <typename Visit>
void scan_ribbons(const MixedGraph& g, Visit&& visit) {
  const NodeSet lines = line_endpoints(g);
  const NodeSet cyclic = cyclic_nodes(g);
  const NodeSet tainted = lines | cyclic;
  if (tainted.empty()) return;
  for (VConfiguration v : v_configurations(g)) {
    if (!v.is_collider()) continue;
    std::optional<NodeIndex> witness;
    if (tainted.contains(v.inner)) {
      witness = v.inner;
    } else {
      const NodeSet hit = descendants(g, NodeSet{v.inner}) & tainted;
      if (!hit.empty()) witness = *hit.begin();
    }
    if (!witness || !lacks_endpoint_identical_edge(g, v)) continue;
    const auto kind = lines.contains(*witness) ? RibbonReport::Witness::LineEndpoint
                                               : RibbonReport::Witness::OnCycle;
    if (!visit(RibbonReport{v, *witness, kind})) return;
  }
}

}  // namespace

std::vector<RibbonReport> find_ribbons(const MixedGraph& g) {
  std::vector<RibbonReport> out;
  scan_ribbons(g, [&](const RibbonReport& r) {
    out.push_back(r);
    return true;
  });
  return out;
}

bool is_ribbonless(const MixedGraph& g) {
  bool found = false;
  scan_ribbons(g, [&](const RibbonReport&) {
    found = true;
    return false;
  });
  return !found;
}

// ---- classes -------------------------------------------------------------------

std::string_view class_name(GraphClass c) {
  switch (c) {
    case GraphClass::LMG: return "LMG";
    case GraphClass::UG: return "UG";
    case GraphClass::BG: return "BG";
    case GraphClass::DAG: return "DAG";
    case GraphClass::RG: return "RG";
    case GraphClass::SG: return "SG";
    case GraphClass::AG: return "AG";
  }
  return "?";
}

std::optional<GraphClass> parse_class(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (GraphClass c : {GraphClass::LMG, GraphClass::UG, GraphClass::BG, GraphClass::DAG,
                       GraphClass::RG, GraphClass::SG, GraphClass::AG}) {
    if (class_name(c) == upper) return c;
  }
  return std::nullopt;
}

std::vector<GraphClass> ClassSet::members() const {
  std::vector<GraphClass> out;
  for (GraphClass c : {GraphClass::LMG, GraphClass::UG, GraphClass::BG, GraphClass::DAG,
                       GraphClass::RG, GraphClass::SG, GraphClass::AG}) {
    if (contains(c)) out.push_back(c);
  }
  return out;
}

namespace {

struct KindCensus {
  bool lines = false;
  bool arcs = false;
  bool arrows = false;
};

KindCensus census(const MixedGraph& g) {
  KindCensus k;
  for (const Edge& e : g.edges()) {
    k.lines |= e.kind == EdgeKind::Line;
    k.arcs |= e.kind == EdgeKind::Arc;
    k.arrows |= e.kind == EdgeKind::Arrow;
  }
  return k;
}

bool has_arrowhead(const MixedGraph& g, NodeIndex v) {
  for (NodeIndex u = 0; u < g.size(); ++u) {
    if (u != v && (g.has_arrow(u, v) || g.has_arc(u, v))) return true;
  }
  return false;
}

// No arrowhead at a line endpoint, no direction-preserving cycle. Together these
// leave arrow+arc as the only possible multiple edge.
bool summary_conditions(const MixedGraph& g) {
  if (!cyclic_nodes(g).empty()) return false;
  for (NodeIndex v : line_endpoints(g)) {
    if (has_arrowhead(g, v)) return false;
  }
  return true;
}

bool is_simple(const MixedGraph& g) {
  for (NodeIndex u = 0; u < g.size(); ++u) {
    for (NodeIndex v = u + 1; v < g.size(); ++v) {
      if (g.between(u, v).size() > 1) return false;
    }
  }
  return true;
}

bool ancestral_conditions(const MixedGraph& g) {
  if (!is_simple(g)) return false;
  for (NodeIndex v = 0; v < g.size(); ++v) {
    const NodeSet into = parents(g, v) | spouses(g, v);
    if (ancestors(g, into).contains(v)) return false;
    if (!neighbours(g, v).empty() && !into.empty()) return false;
  }
  return true;
}

}  // namespace

bool is_dag(const MixedGraph& g) {
  const auto k = census(g);
  return !k.lines && !k.arcs && cyclic_nodes(g).empty();
}

bool is_summary_graph(const MixedGraph& g) { return summary_conditions(g) && is_ribbonless(g); }

bool is_ancestral_graph(const MixedGraph& g) { return is_summary_graph(g) && ancestral_conditions(g); }

ClassSet classify(const MixedGraph& g) {
  ClassSet tags;
  tags.insert(GraphClass::LMG);
  const auto k = census(g);
  if (!k.arcs && !k.arrows) tags.insert(GraphClass::UG);
  if (!k.lines && !k.arrows) tags.insert(GraphClass::BG);
  if (!k.lines && !k.arcs && cyclic_nodes(g).empty()) tags.insert(GraphClass::DAG);
  if (!is_ribbonless(g)) return tags;
  tags.insert(GraphClass::RG);
  if (!summary_conditions(g)) return tags;
  tags.insert(GraphClass::SG);
  if (ancestral_conditions(g)) tags.insert(GraphClass::AG);
  return tags;
}

}  // namespace smg
