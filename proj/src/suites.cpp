#include "smg/suites.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "smg/witness.hpp"

namespace smg {

namespace {

std::string reproducer(const MixedGraph& g, const ProjectionSpec& spec, const std::string& note = {}) {
  GraphDocument doc{{}, g, spec.marginalised, spec.conditioned};
  std::sort(doc.marginalised.begin(), doc.marginalised.end());
  std::sort(doc.conditioned.begin(), doc.conditioned.end());
  std::string out;
  if (!note.empty()) out += "# " + note + "\n";
  return out + serialize_graph(doc);
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

CheckOutcome fail(std::string detail, std::string repro) { return {false, std::move(detail), std::move(repro)}; }

std::string describe_diff(const IndependenceModel& expected, const IndependenceModel& actual) {
  const ModelDiff d = model_diff(actual, expected);
  std::string out = std::to_string(d.missing.size()) + " statements missing, " + std::to_string(d.extra.size()) +
                    " extra";
  if (!d.missing.empty()) out += "; e.g. missing " + expected.format(*d.missing.begin());
  if (!d.extra.empty()) out += "; e.g. extra " + actual.format(*d.extra.begin());
  return out;
}

}  // namespace

void SuiteReport::add(CheckOutcome outcome) {
  ++cases;
  if (outcome.ok) return;
  ++failures;
  if (counterexamples.size() < 5) counterexamples.push_back(std::move(outcome));
}

std::string_view projection_name(ProjectionType t) {
  switch (t) {
    case ProjectionType::RG: return "rg";
    case ProjectionType::SG: return "sg";
    case ProjectionType::AG: return "ag";
  }
  return "?";
}

GraphClass target_class(ProjectionType t) {
  switch (t) {
    case ProjectionType::RG: return GraphClass::RG;
    case ProjectionType::SG: return GraphClass::SG;
    case ProjectionType::AG: return GraphClass::AG;
  }
  return GraphClass::LMG;
}

CheckOutcome check_stability(const MixedGraph& g, const ProjectionSpec& spec, ProjectionType t) {
  const IndependenceModel alpha = marginalise_condition(independence_model(g), spec.marginalised, spec.conditioned);
  const MixedGraph p = project(t, g, spec);
  const IndependenceModel induced = independence_model(p);
  if (model_equal(alpha, induced)) return {};
  return fail("stability (" + std::string(projection_name(t)) + "): " + describe_diff(alpha, induced),
              reproducer(g, spec, "projection " + std::string(projection_name(t))));
}

CheckOutcome check_composition(const MixedGraph& g, const ProjectionSpec& first, const ProjectionSpec& second,
                               ProjectionType t) {
  const MixedGraph staged = project(t, project(t, g, first), second);
  ProjectionSpec both = first;
  both.marginalised.insert(both.marginalised.end(), second.marginalised.begin(), second.marginalised.end());
  both.conditioned.insert(both.conditioned.end(), second.conditioned.begin(), second.conditioned.end());
  const MixedGraph once = project(t, g, both);
  if (staged == once) return {};
  return fail("composition (" + std::string(projection_name(t)) + "): two-stage and one-stage results differ",
              reproducer(g, first,
                         "projection " + std::string(projection_name(t)) + "; second stage marg: " +
                             join(second.marginalised) + " cond: " + join(second.conditioned)));
}

CheckOutcome check_edge_signatures(const MixedGraph& h, const ProjectionSpec& spec, ConnectionEngine::Strategy strategy) {
  const ResolvedSpec r = resolve_spec(h, spec);
  const MixedGraph p = project_rg(h, spec);
  const auto keep = p.labels();
  for (std::size_t x = 0; x < keep.size(); ++x) {
    for (std::size_t y = x + 1; y < keep.size(); ++y) {
      SignatureSet in_output;
      for (const Edge& e : p.between(x, y)) in_output.insert(signature_of(e, x, y));
      const SignatureSet in_input =
          endpoint_identical_connection(h, h.index_of(keep[x]), h.index_of(keep[y]), r.m, r.c, strategy);
      if (in_output != in_input) {
        return fail("edge signatures: edges between " + keep[x] + " and " + keep[y] +
                        " do not match the connecting paths of the input",
                    reproducer(h, spec));
      }
    }
  }
  return {};
}

CheckOutcome check_class_closure(const MixedGraph& h, const ProjectionSpec& spec, ProjectionType t) {
  const MixedGraph p = project(t, h, spec);
  if (classify(p).contains(target_class(t))) return {};
  return fail("class closure: " + std::string(projection_name(t)) + " projection left its class",
              reproducer(h, spec, "projection " + std::string(projection_name(t))));
}

CheckOutcome check_round_trip(const MixedGraph& h, ProjectionType t) {
  const DagifyResult d = dagify(h);
  if (!is_dag(d.dag)) return fail("round trip: dagify produced a graph that is not a DAG", serialize_graph(h));
  const MixedGraph back = project(t, d.dag, ProjectionSpec{d.marginalised, d.conditioned});
  if (back == h) return {};
  return fail("round trip (" + std::string(projection_name(t)) + "): projection of the witness DAG differs",
              serialize_graph(h));
}

CheckOutcome check_correspondence(const MixedGraph& dag, const ProjectionSpec& spec) {
  const IndependenceModel rg = independence_model(project_rg(dag, spec));
  const IndependenceModel sg = independence_model(project_sg(dag, spec));
  const IndependenceModel ag = independence_model(project_ag(dag, spec));
  if (!model_equal(rg, sg)) return fail("correspondence: RG and SG models differ: " + describe_diff(rg, sg), reproducer(dag, spec));
  if (!model_equal(rg, ag)) return fail("correspondence: RG and AG models differ: " + describe_diff(rg, ag), reproducer(dag, spec));
  return {};
}

CheckOutcome check_engine_oracle(const MixedGraph& g, const ConnectionQuery& q) {
  const ConnectionEngine engine(g);
  const PathEnumeration all = enumerate_connecting_paths(g, q);
  SignatureSet enumerated;
  for (const auto& p : all.paths) enumerated.insert(p.signature());
  auto describe = [&] {
    return "query " + g.label(q.source) + " ~ " + g.label(q.target) + " M={" + join(g.labels_of(q.allowed_noncolliders)) +
           "} C={" + join(g.labels_of(q.collider_enablers)) + "}";
  };
  if (engine.exists(q) != !all.paths.empty()) return fail("engine/oracle verdicts differ on " + describe(), serialize_graph(g));
  if (engine.signatures(q) != enumerated) return fail("engine/oracle signatures differ on " + describe(), serialize_graph(g));
  if (is_ribbonless(g)) {
    const ConnectionEngine walk(g, ConnectionEngine::Strategy::WalkReachability);
    if (walk.signatures(q) != enumerated) return fail("walk signatures differ on " + describe(), serialize_graph(g));
  }
  return {};
}

CheckOutcome check_maximality(const MixedGraph& g) {
  const bool by_paths = is_maximal(g);
  const bool by_definition = is_maximal_by_definition(g);
  if (by_paths != by_definition) {
    return fail(std::string("maximality: primitive inducing paths say ") + (by_paths ? "maximal" : "not maximal") +
                    ", pairwise separation says " + (by_definition ? "maximal" : "not maximal"),
                serialize_graph(g));
  }
  if (!is_ribbonless(g) || by_paths) return {};
  const MaximalizeResult mx = maximalize(g);
  if (!model_equal(independence_model(g), independence_model(mx.graph))) {
    return fail("maximalize changed the independence model", serialize_graph(g));
  }
  if (!is_maximal_by_definition(mx.graph) || !is_maximal(mx.graph)) {
    return fail("maximalize left a non-adjacent pair that no set separates", serialize_graph(g));
  }
  return {};
}

const std::vector<std::string>& graph_suite_names() {
  static const std::vector<std::string> names{"stability", "composition", "correspondence", "lemma1", "maximality"};
  return names;
}

SuiteReport run_graph_suite(const std::string& suite, const GraphDocument& doc, std::size_t seeds,
                            std::uint64_t seed) {
  const MixedGraph& g = doc.graph;
  Rng rng(seed);
  SuiteReport report;
  report.suite = suite;
  const ClassSet classes = classify(g);
  std::vector<ProjectionType> types;
  for (ProjectionType t : {ProjectionType::RG, ProjectionType::SG, ProjectionType::AG}) {
    if (classes.contains(target_class(t))) types.push_back(t);
  }
  auto require = [&](GraphClass c, ErrorKind kind) {
    if (!classes.contains(c)) {
      throw Error(kind, "suite '" + suite + "' needs a graph of class " + std::string(class_name(c)));
    }
  };
  // The file's own marks come first, then random specs.
  auto specs = [&](std::size_t k) {
    if (k == 0 && (!doc.marginalised.empty() || !doc.conditioned.empty())) {
      return ProjectionSpec{doc.marginalised, doc.conditioned};
    }
    return random_spec(rng, g, 0.25, 0.2);
  };

  if (suite == "stability") {
    require(GraphClass::RG, ErrorKind::NotRibbonless);
    for (std::size_t k = 0; k < seeds; ++k) {
      const ProjectionSpec spec = specs(k);
      for (ProjectionType t : types) report.add(check_stability(g, spec, t));
    }
  } else if (suite == "composition") {
    require(GraphClass::RG, ErrorKind::NotRibbonless);
    for (std::size_t k = 0; k < seeds; ++k) {
      const ProjectionSpec first = specs(k);
      std::vector<std::string> used = first.marginalised;
      used.insert(used.end(), first.conditioned.begin(), first.conditioned.end());
      const ProjectionSpec second = random_spec(rng, g, 0.25, 0.2, used);
      for (ProjectionType t : types) report.add(check_composition(g, first, second, t));
    }
  } else if (suite == "correspondence") {
    if (!is_dag(g)) throw Error(ErrorKind::SpecInvalid, "suite 'correspondence' needs a DAG");
    for (std::size_t k = 0; k < seeds; ++k) report.add(check_correspondence(g, specs(k)));
  } else if (suite == "lemma1") {
    require(GraphClass::RG, ErrorKind::NotRibbonless);
    for (std::size_t k = 0; k < seeds; ++k) report.add(check_edge_signatures(g, specs(k)));
  } else if (suite == "maximality") {
    report.add(check_maximality(g));
  } else {
    throw Error(ErrorKind::SpecInvalid, "unknown suite '" + suite + "'");
  }
  return report;
}

std::vector<MixedGraph> all_dags(const std::vector<std::string>& labels) {
  const MixedGraph empty(labels);
  const std::size_t n = empty.size();
  std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  std::size_t total = 1;
  for (std::size_t k = 0; k < pairs.size(); ++k) total *= 3;
  std::vector<MixedGraph> out;
  for (std::size_t code = 0; code < total; ++code) {
    MixedGraph g = empty;
    std::size_t rest = code;
    for (const auto& [u, v] : pairs) {
      const std::size_t choice = rest % 3;
      rest /= 3;
      if (choice == 1) g.add_edge(Edge::arrow(u, v));
      if (choice == 2) g.add_edge(Edge::arrow(v, u));
    }
    if (cyclic_nodes(g).empty()) out.push_back(std::move(g));
  }
  return out;
}

NonStabilityCertificate search_dag_nonstability(std::size_t max_nodes, bool allow_conditioning) {
  NonStabilityCertificate cert;
  std::map<std::vector<std::string>, std::pair<std::size_t, std::set<std::set<IndependenceStatement>>>> dag_models;
  auto models_on = [&](const std::vector<std::string>& labels) -> const auto& {
    auto it = dag_models.find(labels);
    if (it == dag_models.end()) {
      std::set<std::set<IndependenceStatement>> models;
      const auto dags = all_dags(labels);
      for (const auto& d : dags) models.insert(independence_model(d).statements);
      it = dag_models.emplace(labels, std::pair{dags.size(), std::move(models)}).first;
    }
    return it->second;
  };

  for (std::size_t n = 1; n <= max_nodes; ++n) {
    const auto labels = node_labels(n);
    for (const MixedGraph& dag : all_dags(labels)) {
      ++cert.dags_searched;
      const IndependenceModel j = independence_model(dag);
      // Each node is kept, marginalised or (optionally) conditioned.
      const std::size_t options = allow_conditioning ? 3 : 2;
      std::size_t total = 1;
      for (std::size_t k = 0; k < n; ++k) total *= options;
      for (std::size_t code = 1; code < total; ++code) {
        ProjectionSpec spec;
        std::vector<std::string> rest;
        std::size_t c = code;
        for (const auto& l : labels) {
          const std::size_t role = c % options;
          c /= options;
          if (role == 0) rest.push_back(l);
          if (role == 1) spec.marginalised.push_back(l);
          if (role == 2) spec.conditioned.push_back(l);
        }
        ++cert.specs_searched;
        const IndependenceModel alpha = marginalise_condition(j, spec.marginalised, spec.conditioned);
        const auto& [count, models] = models_on(rest);
        if (!models.contains(alpha.statements)) {
          cert.found = true;
          cert.dag = dag;
          cert.spec = spec;
          cert.alpha = alpha;
          cert.competing_dags = count;
          return cert;
        }
      }
    }
  }
  return cert;
}

nlohmann::ordered_json certificate_to_json(const NonStabilityCertificate& cert) {
  nlohmann::ordered_json j;
  j["found"] = cert.found;
  j["dags_searched"] = cert.dags_searched;
  j["specs_searched"] = cert.specs_searched;
  if (cert.found) {
    j["dag"] = serialize_graph(GraphDocument{{}, cert.dag, cert.spec.marginalised, cert.spec.conditioned});
    j["alpha_model"] = model_to_json(cert.alpha);
    j["competing_dags_swept"] = cert.competing_dags;
  }
  return j;
}

namespace {

// Pair index of (u, v), u < v, in row-major order.
std::size_t pair_index(std::size_t n, std::size_t u, std::size_t v) {
  std::size_t idx = 0;
  for (std::size_t a = 0; a < u; ++a) idx += n - a - 1;
  return idx + (v - u - 1);
}

// Four bits per pair: line, arc, arrow lo->hi, arrow hi->lo.
MixedGraph decode(std::size_t n, std::uint64_t code) {
  MixedGraph g(node_labels(n));
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = u + 1; v < n; ++v) {
      const auto bits = (code >> (4 * pair_index(n, u, v))) & 0xF;
      if (bits & 1) g.add_edge(Edge::line(u, v));
      if (bits & 2) g.add_edge(Edge::arc(u, v));
      if (bits & 4) g.add_edge(Edge::arrow(u, v));
      if (bits & 8) g.add_edge(Edge::arrow(v, u));
    }
  }
  return g;
}

}  // namespace

ExhaustiveMaximality exhaustive_maximality(std::size_t n) {
  ExhaustiveMaximality out;
  const std::size_t pairs = n * (n - 1) / 2;
  struct Move {
    std::size_t to;
    bool flip;
  };
  std::vector<std::vector<Move>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    std::vector<Move> moves(pairs);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        const std::size_t a = std::min(p[u], p[v]);
        const std::size_t b = std::max(p[u], p[v]);
        moves[pair_index(n, u, v)] = {pair_index(n, a, b), p[u] > p[v]};
      }
    }
    perms.push_back(std::move(moves));
  } while (std::next_permutation(p.begin(), p.end()));

  const std::uint64_t total = std::uint64_t{1} << (4 * pairs);
  for (std::uint64_t code = 0; code < total; ++code) {
    bool canonical = true;
    for (const auto& moves : perms) {
      std::uint64_t image = 0;
      for (std::size_t k = 0; k < pairs; ++k) {
        std::uint64_t bits = (code >> (4 * k)) & 0xF;
        if (moves[k].flip) bits = (bits & 3) | ((bits & 4) << 1) | ((bits & 8) >> 1);
        image |= bits << (4 * moves[k].to);
      }
      if (image < code) {
        canonical = false;
        break;
      }
    }
    if (!canonical) continue;
    ++out.graphs;
    const MixedGraph g = decode(n, code);
    if (!is_ribbonless(g)) continue;
    ++out.ribbonless;
    if (!is_maximal(g)) ++out.non_maximal;
    CheckOutcome c = check_maximality(g);
    if (!c.ok) {
      ++out.failures;
      if (out.counterexamples.size() < 5) out.counterexamples.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace smg
