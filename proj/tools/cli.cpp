#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "smg/imodel.hpp"
#include "smg/io.hpp"
#include "smg/msep.hpp"
#include "smg/project.hpp"
#include "smg/suites.hpp"
#include "smg/witness.hpp"

namespace smg::cli {

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

nlohmann::json parse_json(const std::string& text, const std::string& path) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

GraphDocument load_graph(const std::string& path) {
  if (ends_with(path, ".json")) {
    GraphDocument doc = graph_from_json(parse_json(read_text(path), path));
    doc.name = path;
    return doc;
  }
  return read_graph_file(path);
}

// Flags replace the file's marks as a whole.
ProjectionSpec effective_spec(const GraphDocument& doc, const std::vector<std::string>& marg,
                              const std::vector<std::string>& cond, bool flags_given, std::ostream& err) {
  if (!flags_given) return {doc.marginalised, doc.conditioned};
  if (!doc.marginalised.empty() || !doc.conditioned.empty()) {
    err << "warning: --marg/--cond override the marg:/cond: lines of " << doc.name << '\n';
  }
  return {marg, cond};
}

std::string path_string(const MixedGraph& g, const PathWitness& p) {
  std::string out = g.label(p.nodes.front());
  for (std::size_t k = 0; k < p.edges.size(); ++k) {
    const Edge& e = p.edges[k];
    std::string_view op = edge_operator(e.kind);
    if (e.kind == EdgeKind::Arrow && e.from != p.nodes[k]) op = "<-";
    out += " ";
    out += op;
    out += " " + g.label(p.nodes[k + 1]);
  }
  return out;
}

NodeSet node_set(const MixedGraph& g, const std::vector<std::string>& labels) {
  NodeSet s;
  for (const auto& l : labels) s.insert(g.index_of(l));
  return s;
}

void print_model(const IndependenceModel& j, bool json, std::ostream& out) {
  const auto doc = model_to_json(j);
  if (json) {
    out << doc.dump(2) << '\n';
    return;
  }
  for (const auto& row : doc["statements"]) {
    const auto a = j.mask_of(row["A"].get<std::vector<std::string>>());
    const auto b = j.mask_of(row["B"].get<std::vector<std::string>>());
    const auto c = j.mask_of(row["C"].get<std::vector<std::string>>());
    out << j.format({a, b, c}) << '\n';
  }
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

struct Options {
  std::string file;
  std::string required_class;
  std::string type;
  std::vector<std::string> marg, cond;
  std::vector<std::string> a, b, c;
  std::string suite;
  std::size_t seeds = 20;
  std::uint64_t seed = 1;
  std::size_t bound = kDefaultModelBound;
  std::optional<std::uint64_t> shuffle;
  bool trace = false;
  bool json = false;
  bool dot = false;
  bool witness = false;
  bool no_enforce = false;
};

int run_validate(const Options& o, std::ostream& out) {
  std::optional<GraphClass> wanted;
  if (!o.required_class.empty()) {
    wanted = parse_class(o.required_class);
    if (!wanted) throw CLI::ValidationError("--class", "unknown class '" + o.required_class + "'");
  }
  const GraphDocument doc = load_graph(o.file);
  const ClassSet classes = classify(doc.graph);
  std::vector<std::string> tags;
  for (GraphClass c : classes.members()) tags.emplace_back(class_name(c));
  out << "classes: " << join(tags, " ") << '\n';
  for (const RibbonReport& r : find_ribbons(doc.graph)) {
    const MixedGraph& g = doc.graph;
    out << "ribbon: " << g.label(r.v.end1) << ' ' << g.label(r.v.inner) << ' ' << g.label(r.v.end2) << " via "
        << g.label(r.witness_node)
        << (r.witness == RibbonReport::Witness::LineEndpoint ? " (line endpoint)" : " (on a cycle)") << '\n';
  }
  return !wanted || classes.contains(*wanted) ? kExitOk : kExitNegative;
}

int run_project(const Options& o, bool flags_given, std::ostream& out, std::ostream& err) {
  const GraphDocument doc = load_graph(o.file);
  const auto type = parse_projection_type(o.type);
  if (!type) throw CLI::ValidationError("--type", "expected rg, sg or ag");
  const ProjectionSpec spec = effective_spec(doc, o.marg, o.cond, flags_given, err);
  ClosureTrace trace;
  std::vector<std::string> warnings;
  ProjectionOptions opts;
  opts.enforce_class = !o.no_enforce;
  opts.trace = o.trace ? &trace : nullptr;
  opts.warnings = &warnings;
  opts.shuffle_seed = o.shuffle;
  const MixedGraph result = project(*type, doc.graph, spec, opts);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  if (o.trace) err << format_trace(trace);
  if (o.json) {
    out << graph_to_json(GraphDocument{{}, result, {}, {}}).dump(2) << '\n';
  } else if (o.dot) {
    out << to_dot(result);
  } else {
    out << serialize_graph(result);
  }
  return kExitOk;
}

int run_msep(const Options& o, std::ostream& out) {
  const GraphDocument doc = load_graph(o.file);
  const MixedGraph& g = doc.graph;
  const NodeSet a = node_set(g, o.a);
  const NodeSet b = node_set(g, o.b);
  const NodeSet c = node_set(g, o.c);
  if (m_separated(g, a, b, c)) {
    out << "separated\n";
    return kExitOk;
  }
  out << "connected\n";
  if (o.witness) {
    const NodeSet m = g.all() - a - b - c;
    for (NodeIndex s : a.to_vector()) {
      for (NodeIndex t : b.to_vector()) {
        if (auto p = find_connecting_path(g, ConnectionQuery{s, t, m, c})) {
          out << "path: " << path_string(g, *p) << '\n';
          return kExitNegative;
        }
      }
    }
  }
  return kExitNegative;
}

int run_model(const Options& o, std::ostream& out) {
  const GraphDocument doc = load_graph(o.file);
  print_model(independence_model(doc.graph, o.bound), o.json, out);
  return kExitOk;
}

int run_marginalise(const Options& o, bool flags_given, std::ostream& out, std::ostream& err) {
  IndependenceModel j;
  ProjectionSpec spec{o.marg, o.cond};
  if (ends_with(o.file, ".json")) {
    const nlohmann::json doc = parse_json(read_text(o.file), o.file);
    if (doc.contains("statements")) {
      j = model_from_json(doc);
    } else {
      const GraphDocument g = graph_from_json(doc);
      j = independence_model(g.graph, o.bound);
      spec = effective_spec(g, o.marg, o.cond, flags_given, err);
    }
  } else {
    const GraphDocument g = read_graph_file(o.file);
    j = independence_model(g.graph, o.bound);
    spec = effective_spec(g, o.marg, o.cond, flags_given, err);
  }
  print_model(marginalise_condition(j, spec.marginalised, spec.conditioned), o.json, out);
  return kExitOk;
}

int run_dagify(const Options& o, std::ostream& out) {
  const GraphDocument doc = load_graph(o.file);
  const DagifyResult r = dagify(doc.graph);
  const GraphDocument result{{}, r.dag, r.marginalised, r.conditioned};
  if (o.json) {
    out << graph_to_json(result).dump(2) << '\n';
  } else {
    out << serialize_graph(result);
  }
  return kExitOk;
}

int run_maximalize(const Options& o, std::ostream& out, std::ostream& err) {
  const GraphDocument doc = load_graph(o.file);
  const MaximalizeResult r = maximalize(doc.graph);
  for (const auto& w : r.warnings) err << "warning: " << w << '\n';
  if (o.json) {
    out << graph_to_json(GraphDocument{{}, r.graph, {}, {}}).dump(2) << '\n';
  } else {
    out << serialize_graph(r.graph);
  }
  return kExitOk;
}

int run_check(const Options& o, std::ostream& out) {
  const GraphDocument doc = load_graph(o.file);
  const SuiteReport report = run_graph_suite(o.suite, doc, o.seeds, o.seed);
  out << "suite " << report.suite << ": " << report.cases << " cases, " << report.failures << " failures\n";
  for (const CheckOutcome& c : report.counterexamples) {
    out << "counterexample: " << c.detail << '\n' << c.reproducer;
    if (!c.reproducer.empty() && c.reproducer.back() != '\n') out << '\n';
  }
  return report.ok() ? kExitOk : kExitNegative;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable mixed graphs: classes, separation, models and projections", "smg"};
  app.require_subcommand(1);
  Options o;

  auto add_file = [&](CLI::App* sub) { sub->add_option("file", o.file, "graph file (.mg text or .json)")->required(); };
  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--marg", o.marg, "nodes to marginalise over")->delimiter(',');
    sub->add_option("--cond", o.cond, "nodes to condition on")->delimiter(',');
  };

  auto* validate = app.add_subcommand("validate", "print the class tags of a graph");
  add_file(validate);
  validate->add_option("--class", o.required_class, "exit 1 unless the graph has this class");

  auto* proj = app.add_subcommand("project", "marginalise and condition a graph");
  add_file(proj);
  proj->add_option("--type", o.type, "rg, sg or ag")->required();
  add_spec(proj);
  proj->add_flag("--trace", o.trace, "print the generated edges to stderr");
  proj->add_flag("--json", o.json, "JSON output");
  proj->add_flag("--dot", o.dot, "graphviz output");
  proj->add_flag("--no-enforce", o.no_enforce, "accept inputs outside the source class");
  proj->add_option("--shuffle", o.shuffle, "visit closure candidates in a seeded random order");

  auto* msep = app.add_subcommand("msep", "m-separation query");
  add_file(msep);
  msep->add_option("--A", o.a, "first node set")->delimiter(',')->required();
  msep->add_option("--B", o.b, "second node set")->delimiter(',')->required();
  msep->add_option("--C", o.c, "conditioning set")->delimiter(',');
  msep->add_flag("--witness", o.witness, "print one connecting path");

  auto* model = app.add_subcommand("model", "enumerate the induced independence model");
  add_file(model);
  model->add_flag("--json", o.json, "JSON output");
  model->add_option("--bound", o.bound, "largest node count to enumerate");

  auto* marg = app.add_subcommand("marginalise", "marginalise and condition an independence model");
  add_file(marg);
  add_spec(marg);
  marg->add_flag("--json", o.json, "JSON output");
  marg->add_option("--bound", o.bound, "largest node count to enumerate");

  auto* dag = app.add_subcommand("dagify", "DAG with hidden and selection nodes projecting to the graph");
  add_file(dag);
  dag->add_flag("--json", o.json, "JSON output");

  auto* maxi = app.add_subcommand("maximalize", "add the edges forced by primitive inducing paths");
  add_file(maxi);
  maxi->add_flag("--json", o.json, "JSON output");

  auto* check = app.add_subcommand("check", "run a property suite rooted at a graph");
  add_file(check);
  check->add_option("--suite", o.suite, "property suite")
      ->required()
      ->check(CLI::IsMember(graph_suite_names()));
  check->add_option("--seeds", o.seeds, "number of random specs");
  check->add_option("--seed", o.seed, "random seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
    if (o.json && o.dot) throw CLI::ValidationError("--dot", "cannot be combined with --json");

    const bool flags_given = !o.marg.empty() || !o.cond.empty();
    if (validate->parsed()) return run_validate(o, out);
    if (proj->parsed()) return run_project(o, flags_given, out, err);
    if (msep->parsed()) return run_msep(o, out);
    if (model->parsed()) return run_model(o, out);
    if (marg->parsed()) return run_marginalise(o, flags_given, out, err);
    if (dag->parsed()) return run_dagify(o, out);
    if (maxi->parsed()) return run_maximalize(o, out, err);
    if (check->parsed()) return run_check(o, out);
    return kExitUsage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << '\n';
    return kExitDomain;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return cli_main(args, out, err);
}

}  // namespace smg::cli
