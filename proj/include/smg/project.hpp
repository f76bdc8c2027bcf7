#pragma once

// Marginalisation over M and conditioning on C at the graph level, for
// ribbonless, summary and ancestral graphs, plus the maps between those classes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smg/graph.hpp"

namespace smg {

struct ProjectionSpec {
  std::vector<std::string> marginalised;  // M
  std::vector<std::string> conditioned;   // C
};

struct ResolvedSpec {
  NodeSet m;
  NodeSet c;
};

// Throws SpecInvalid for unknown labels or when M and C overlap.
ResolvedSpec resolve_spec(const MixedGraph& g, const ProjectionSpec& spec);

// One edge generated or replaced during a projection. `rule` is "1".."10" for the
// closure rows, or "sg-step-2", "ag-step-2", "ag-step-3".
struct TraceEntry {
  std::string rule;
  std::string inner;  // inner node of the V, or the node losing an arrowhead
  LabeledEdge generated;
  std::optional<LabeledEdge> replaced;
  // Set when the generated edge already existed and only `replaced` was removed.
  bool merged = false;
};
using ClosureTrace = std::vector<TraceEntry>;

// One line per entry: `rule=<id> inner=<node> generated=<edge>`, followed by
// ` replaced=<edge>` when an edge was removed.
std::string format_trace(const ClosureTrace& trace);
// Applies the trace to g (adding generated edges, removing replaced ones).
MixedGraph replay_trace(const MixedGraph& g, const ClosureTrace& trace);

// Closure row for a V given the marks at its end nodes and at its inner node, or
// 0 when no row applies (never for a V in a loopless mixed graph).
int closure_rule(const VConfiguration& v);

struct ClosureOptions {
  ClosureTrace* trace = nullptr;
  // When set, the candidate Vs of every pass are visited in a shuffled order.
  std::optional<std::uint64_t> shuffle_seed;
};

// Least fixpoint of the closure rows: a non-collider V with inner node in M, or a
// collider V with inner node in C ∪ an(C), adds the edge between its endpoints
// carrying the same endpoint marks. an(C) follows the growing graph. No node is
// removed.
MixedGraph table1_closure(const MixedGraph& h, const ResolvedSpec& spec, const ClosureOptions& opts = {});

enum class ProjectionType : std::uint8_t { RG, SG, AG };
std::optional<ProjectionType> parse_projection_type(std::string_view name);

struct ProjectionOptions {
  // Reject inputs outside the source class of the projection.
  bool enforce_class = true;
  ClosureTrace* trace = nullptr;
  std::vector<std::string>* warnings = nullptr;
  std::optional<std::uint64_t> shuffle_seed;
};

MixedGraph project_rg(const MixedGraph& h, const ProjectionSpec& spec, const ProjectionOptions& opts = {});
MixedGraph project_sg(const MixedGraph& h, const ProjectionSpec& spec, const ProjectionOptions& opts = {});
MixedGraph project_ag(const MixedGraph& h, const ProjectionSpec& spec, const ProjectionOptions& opts = {});
MixedGraph project(ProjectionType type, const MixedGraph& h, const ProjectionSpec& spec,
                   const ProjectionOptions& opts = {});

// Removes every arrowhead pointing at a member of anc_c: an arrow into anc_c
// becomes a line, an arc loses the head at each endpoint in anc_c. A resulting
// edge that already exists is dropped.
MixedGraph rg_to_sg(const MixedGraph& h, const NodeSet& anc_c, ClosureTrace* trace = nullptr);
MixedGraph rg_to_sg(const MixedGraph& h, const std::vector<std::string>& anc_c, ClosureTrace* trace = nullptr);

// Turns a summary graph into an ancestral one: for j→k↔i or j↔k↔i with
// k ∈ an(i) add j→i or j↔i; then replace each arc j↔i with j ∈ an(i) by j→i.
// The two steps repeat until neither changes the graph. Throws NotSummaryGraph.
MixedGraph sg_to_ag(const MixedGraph& h, ClosureTrace* trace = nullptr, bool enforce_class = true);

// Experimental: an SG meant to induce the same model as a ribbonless graph
// without knowing the DAG it came from. Removes arrowheads pointing at line
// endpoints, nodes on direction-preserving cycles and their ancestors, until
// none is left.
MixedGraph rg_to_sg_heuristic(const MixedGraph& h);

}  // namespace smg
