#pragma once

// Loopless mixed graphs: nodes joined by lines (i -- j), arcs (i <-> j) and
// arrows (i -> j). Between two nodes there is at most one edge of each type, so at
// most four edges in total (a line, an arc and an arrow in each direction).
//
// Nodes are labeled and kept in lexicographic label order; a node's index is its
// position in that order. Two graphs are equal when they have the same labels and
// the same edges (labeled-graph equality, no isomorphism).

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smg/error.hpp"
#include "smg/node_set.hpp"

namespace smg {

enum class EdgeKind : std::uint8_t { Line, Arc, Arrow };

// The mark an edge carries at one of its endpoints.
enum class Mark : std::uint8_t { Tail, Head };

std::string_view edge_operator(EdgeKind kind);  // "--", "<->", "->"

// Line and arc endpoints are stored sorted (from < to); an arrow is stored
// (tail, head).
struct Edge {
  EdgeKind kind = EdgeKind::Line;
  NodeIndex from = 0;
  NodeIndex to = 0;

  static Edge line(NodeIndex u, NodeIndex v) { return sorted(EdgeKind::Line, u, v); }
  static Edge arc(NodeIndex u, NodeIndex v) { return sorted(EdgeKind::Arc, u, v); }
  static Edge arrow(NodeIndex tail, NodeIndex head) { return {EdgeKind::Arrow, tail, head}; }
  static Edge make(EdgeKind kind, NodeIndex u, NodeIndex v) {
    return kind == EdgeKind::Arrow ? arrow(u, v) : sorted(kind, u, v);
  }

  // The edge carrying `at_u` at u and `at_v` at v.
  static Edge with_marks(NodeIndex u, Mark at_u, NodeIndex v, Mark at_v);

  bool touches(NodeIndex v) const { return from == v || to == v; }
  NodeIndex other(NodeIndex v) const { return v == from ? to : from; }
  Mark mark_at(NodeIndex v) const {
    switch (kind) {
      case EdgeKind::Line: return Mark::Tail;
      case EdgeKind::Arc: return Mark::Head;
      case EdgeKind::Arrow: return v == to ? Mark::Head : Mark::Tail;
    }
    return Mark::Tail;
  }

  auto operator<=>(const Edge&) const = default;

 private:
  static Edge sorted(EdgeKind kind, NodeIndex u, NodeIndex v) {
    return u < v ? Edge{kind, u, v} : Edge{kind, v, u};
  }
};

// An edge named by labels, used at API boundaries and in traces.
struct LabeledEdge {
  EdgeKind kind = EdgeKind::Line;
  std::string from;
  std::string to;

  auto operator<=>(const LabeledEdge&) const = default;
};

std::string to_string(const LabeledEdge& e);  // "a -> b"
std::string compact_string(const LabeledEdge& e);  // "a->b"

bool is_valid_label(std::string_view label);

class MixedGraph {
 public:
  MixedGraph() = default;
  // Graph with the given nodes and no edges. Duplicate labels are merged.
  explicit MixedGraph(std::vector<std::string> labels);

  // Builds a graph from labeled edges; repeated edges collapse into one.
  static MixedGraph make(std::vector<std::string> nodes, const std::vector<LabeledEdge>& edges);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(NodeIndex v) const { return labels_.at(v); }
  std::optional<NodeIndex> find(std::string_view label) const;
  NodeIndex index_of(std::string_view label) const;  // throws UnknownNode

  bool has_line(NodeIndex u, NodeIndex v) const { return cell(u, v) & kLineBit; }
  bool has_arc(NodeIndex u, NodeIndex v) const { return cell(u, v) & kArcBit; }
  bool has_arrow(NodeIndex tail, NodeIndex head) const { return cell(tail, head) & kArrowBit; }
  bool adjacent(NodeIndex u, NodeIndex v) const { return (cell(u, v) | cell(v, u)) != 0; }
  bool contains(const Edge& e) const;
  // Edge with the given endpoint marks, if present.
  bool contains_marks(NodeIndex u, Mark at_u, NodeIndex v, Mark at_v) const {
    return contains(Edge::with_marks(u, at_u, v, at_v));
  }

  // Returns false when the edge was already present.
  bool add_edge(const Edge& e);
  bool remove_edge(const Edge& e);
  void add_edge(const LabeledEdge& e);

  // All edges in canonical order: by kind (line, arc, arrow), then endpoints.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;
  // Edges at v ordered by the other endpoint, then kind, then direction.
  std::vector<Edge> incident(NodeIndex v) const;
  // Edges between u and v in canonical order.
  std::vector<Edge> between(NodeIndex u, NodeIndex v) const;

  LabeledEdge labeled(const Edge& e) const { return {e.kind, label(e.from), label(e.to)}; }
  Edge unlabeled(const LabeledEdge& e) const {
    return Edge::make(e.kind, index_of(e.from), index_of(e.to));
  }

  NodeSet all() const { return NodeSet::first_n(size()); }
  NodeSet set_of(std::span<const std::string> labels) const;
  NodeSet set_of(std::initializer_list<std::string_view> labels) const;
  std::vector<std::string> labels_of(const NodeSet& s) const;

  bool operator==(const MixedGraph&) const = default;

 private:
  static constexpr std::uint8_t kLineBit = 1;
  static constexpr std::uint8_t kArcBit = 2;
  static constexpr std::uint8_t kArrowBit = 4;  // set in cell(tail, head) only

  std::uint8_t cell(NodeIndex u, NodeIndex v) const { return cells_[u * labels_.size() + v]; }
  std::uint8_t& cell(NodeIndex u, NodeIndex v) { return cells_[u * labels_.size() + v]; }
  void check_node(NodeIndex v) const;

  std::vector<std::string> labels_;
  std::vector<std::uint8_t> cells_;
};

// Equality of labeled graphs.
inline bool graph_equal(const MixedGraph& a, const MixedGraph& b) { return a == b; }

// ---- structural queries --------------------------------------------------------

NodeSet parents(const MixedGraph& g, NodeIndex v);
NodeSet children(const MixedGraph& g, NodeIndex v);
NodeSet neighbours(const MixedGraph& g, NodeIndex v);
NodeSet spouses(const MixedGraph& g, NodeIndex v);

// Nodes with a direction-preserving path of one or more arrows into `targets`.
// Members of `targets` are included only when they reach another target (or
// themselves, around a cycle). Lines and arcs never carry ancestry.
NodeSet ancestors(const MixedGraph& g, const NodeSet& targets);
NodeSet descendants(const MixedGraph& g, const NodeSet& sources);

// Nodes lying on some direction-preserving cycle.
NodeSet cyclic_nodes(const MixedGraph& g);
inline NodeSet direction_preserving_cycles(const MixedGraph& g) { return cyclic_nodes(g); }

// Nodes that are an endpoint of at least one line.
NodeSet line_endpoints(const MixedGraph& g);

MixedGraph induced_subgraph(const MixedGraph& g, const NodeSet& keep);

// A path with three nodes and two edges; `first` joins end1 and inner, `second`
// joins inner and end2.
struct VConfiguration {
  NodeIndex end1 = 0;
  NodeIndex inner = 0;
  NodeIndex end2 = 0;
  Edge first;
  Edge second;

  bool is_collider() const {
    return first.mark_at(inner) == Mark::Head && second.mark_at(inner) == Mark::Head;
  }
};

// Every V in the graph, once per unordered choice of its two edges (end1 < end2).
std::vector<VConfiguration> v_configurations(const MixedGraph& g);

struct RibbonReport {
  enum class Witness : std::uint8_t { LineEndpoint, OnCycle };

  // For the mixed case the arrow joins h and i; otherwise h < j.
  VConfiguration v;
  // i itself or a descendant of i meeting the witness condition.
  NodeIndex witness_node = 0;
  Witness witness = Witness::LineEndpoint;
};

std::vector<RibbonReport> find_ribbons(const MixedGraph& g);
bool is_ribbonless(const MixedGraph& g);

// ---- graph classes -------------------------------------------------------------

enum class GraphClass : std::uint8_t { LMG, UG, BG, DAG, RG, SG, AG };

std::string_view class_name(GraphClass c);
std::optional<GraphClass> parse_class(std::string_view name);  // case-insensitive

class ClassSet {
 public:
  void insert(GraphClass c) { bits_ |= bit(c); }
  bool contains(GraphClass c) const { return bits_ & bit(c); }
  std::vector<GraphClass> members() const;
  bool operator==(const ClassSet&) const = default;

 private:
  static std::uint8_t bit(GraphClass c) { return std::uint8_t(1u << static_cast<unsigned>(c)); }
  std::uint8_t bits_ = 0;
};

ClassSet classify(const MixedGraph& g);
bool is_summary_graph(const MixedGraph& g);
bool is_ancestral_graph(const MixedGraph& g);
bool is_dag(const MixedGraph& g);

}  // namespace smg
