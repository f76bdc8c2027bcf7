#pragma once

// Property checks shared by the `check` command and the acceptance runner. Each
// check looks at one instance and reports a reproducer when it fails.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "smg/imodel.hpp"
#include "smg/io.hpp"
#include "smg/msep.hpp"
#include "smg/project.hpp"
#include "smg/random.hpp"

namespace smg {

struct CheckOutcome {
  bool ok = true;
  std::string detail;
  std::string reproducer;  // graph text with the spec as role marks
};

std::string_view projection_name(ProjectionType t);
GraphClass target_class(ProjectionType t);

// α(J_m(G); M, C) equals J_m of the projection.
CheckOutcome check_stability(const MixedGraph& g, const ProjectionSpec& spec, ProjectionType t);
// Projecting in two stages equals projecting once over the unions.
CheckOutcome check_composition(const MixedGraph& g, const ProjectionSpec& first, const ProjectionSpec& second,
                               ProjectionType t);
// Edges of the ribbonless projection match the endpoint-identical connections
// of the input, signature by signature.
CheckOutcome check_edge_signatures(const MixedGraph& h, const ProjectionSpec& spec,
                          ConnectionEngine::Strategy strategy = ConnectionEngine::Strategy::Automatic);
CheckOutcome check_class_closure(const MixedGraph& h, const ProjectionSpec& spec, ProjectionType t);
// Projecting dagify(H) with its fresh M and C gives H back (t is RG or SG).
CheckOutcome check_round_trip(const MixedGraph& h, ProjectionType t);
// The three projections of a DAG induce one model.
CheckOutcome check_correspondence(const MixedGraph& dag, const ProjectionSpec& spec);
// The selected engine agrees with exhaustive path enumeration; on ribbonless
// graphs the walk engine's signatures must also match the enumerated ones.
CheckOutcome check_engine_oracle(const MixedGraph& g, const ConnectionQuery& q);
// PIP-freeness agrees with the pairwise definition; for ribbonless inputs the
// maximalized graph keeps the model and is pairwise Markov.
CheckOutcome check_maximality(const MixedGraph& g);

struct SuiteReport {
  std::string suite;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<CheckOutcome> counterexamples;  // first few failures

  bool ok() const { return failures == 0; }
  void add(CheckOutcome outcome);
};

// Suites rooted at one graph: stability, composition, correspondence,
// edge signatures (named "lemma1") and maximality. Throws SpecInvalid for an unknown suite and a class error when the
// graph is outside the suite's domain.
SuiteReport run_graph_suite(const std::string& suite, const GraphDocument& doc, std::size_t seeds,
                            std::uint64_t seed);
const std::vector<std::string>& graph_suite_names();

// Every labeled DAG on the given nodes.
std::vector<MixedGraph> all_dags(const std::vector<std::string>& labels);

struct NonStabilityCertificate {
  bool found = false;
  MixedGraph dag;
  ProjectionSpec spec;
  IndependenceModel alpha;
  std::size_t dags_searched = 0;
  std::size_t specs_searched = 0;
  std::size_t competing_dags = 0;  // DAGs on the remaining nodes swept for the certificate
};

// Exhaustive search, by increasing node count up to max_nodes, for a DAG and a
// spec whose α-model is induced by no DAG on the remaining nodes.
NonStabilityCertificate search_dag_nonstability(std::size_t max_nodes, bool allow_conditioning);
nlohmann::ordered_json certificate_to_json(const NonStabilityCertificate& cert);

struct ExhaustiveMaximality {
  std::size_t graphs = 0;       // canonical representatives visited
  std::size_t ribbonless = 0;
  std::size_t non_maximal = 0;
  std::size_t failures = 0;
  std::vector<CheckOutcome> counterexamples;
};

// All loopless mixed graphs on n nodes up to relabeling; runs check_maximality on
// the ribbonless ones.
ExhaustiveMaximality exhaustive_maximality(std::size_t n);

}  // namespace smg
