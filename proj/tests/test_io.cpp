#include <doctest.h>

#include "helpers.hpp"
#include "smg/io.hpp"
#include "smg/random.hpp"

using namespace smg;

namespace {

ErrorKind kind_of(std::string_view text) {
  try {
    parse_graph(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("parse succeeded");
  return ErrorKind::ParseError;
}

std::string message_of(std::string_view text) {
  try {
    parse_graph(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parse") {
  const auto doc = parse_graph("a -> b\nb <-> c\nc -- a");
  CHECK(doc.graph.size() == 3);
  CHECK(doc.graph.edge_count() == 3);
  CHECK(doc.graph.has_arrow(0, 1));
  CHECK(doc.graph.has_arc(1, 2));
  CHECK(doc.graph.has_line(0, 2));

  CHECK(kind_of("a -> a") == ErrorKind::LoopEdge);
  CHECK(message_of("a -> a").find("line 1") != std::string::npos);
  CHECK(kind_of("nodes: a b\na -> c") == ErrorKind::UndeclaredNode);
  CHECK(message_of("nodes: a b\na -> c").find("'c'") != std::string::npos);
  CHECK(kind_of("a -> b\na -> b") == ErrorKind::DuplicateEdge);
  CHECK(kind_of("a <-> b\nb <-> a") == ErrorKind::DuplicateEdge);
  CHECK(kind_of("a => b") == ErrorKind::ParseError);
  CHECK(message_of("a -> b\n  a ~ b").find("line 2, column 5") != std::string::npos);
  CHECK(kind_of("a -> b\nmarg: a\ncond: a") == ErrorKind::SpecInvalid);
  CHECK(kind_of("nodes: a\nnodes: b") == ErrorKind::ParseError);
  CHECK(kind_of("nodes: a\nmarg: z") == ErrorKind::UndeclaredNode);
}

TEST_CASE("comments, blank lines and directives") {
  const auto doc = parse_graph("# header\n\nnodes: a, b c   # trailing\na -> b\nmarg: c\ncond: b\n");
  CHECK(doc.graph.labels() == std::vector<std::string>{"a", "b", "c"});
  CHECK(doc.marginalised == std::vector<std::string>{"c"});
  CHECK(doc.conditioned == std::vector<std::string>{"b"});
  // Without a nodes: line, names come from the edges and marks must use them.
  CHECK(parse_graph("x -- y\nz -> x\nmarg: z").graph.size() == 3);
  CHECK(kind_of("x -- y\nmarg: z") == ErrorKind::UndeclaredNode);
}

TEST_CASE("serialize") {
  CHECK(serialize_graph(MixedGraph{}) == "nodes:\n");
  const auto doc = parse_graph("c -> a\nb -- a\nb <-> c\nmarg: b\ncond: c");
  CHECK(serialize_graph(doc) == "nodes: a b c\na -- b\nb <-> c\nc -> a\nmarg: b\ncond: c\n");
  CHECK(parse_graph(serialize_graph(doc)) == doc);
  CHECK(serialize_graph(parse_graph(serialize_graph(doc))) == serialize_graph(doc));
}

TEST_CASE("random documents round trip") {
  Rng rng(100);
  for (int k = 0; k < 300; ++k) {
    const MixedGraph h = random_lmg(rng, uniform(rng, 0, 8), 0.15, 0.15, 0.3);
    const ProjectionSpec spec = random_spec(rng, h, 0.2, 0.2);
    const GraphDocument doc{"", h, spec.marginalised, spec.conditioned};
    const std::string text = serialize_graph(doc);
    CHECK(parse_graph(text) == doc);
    CHECK(serialize_graph(parse_graph(text)) == text);
    CHECK(graph_from_json(nlohmann::json::parse(graph_to_json(doc).dump())) == doc);
  }
}

TEST_CASE("JSON and DOT") {
  const auto doc = parse_graph("a -> b\nb <-> c\nc -- a\nmarg: c");
  const auto j = graph_to_json(doc);
  CHECK(j["nodes"].size() == 3);
  CHECK(j["edges"].size() == 3);
  CHECK(j["marg"] == nlohmann::json::array({"c"}));
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"nodes": ["a"], "edges": [{"type": "bogus"}]})")), Error);
  const std::string dot = to_dot(doc.graph);
  CHECK(dot.find("digraph") != std::string::npos);
}

TEST_CASE("file reading") {
  const auto doc = read_graph_file(testutil::fixture("chain.mg"));
  CHECK(doc.graph.size() == 3);
  try {
    read_graph_file(testutil::fixture("missing.mg"));
    FAIL("missing file accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
}
