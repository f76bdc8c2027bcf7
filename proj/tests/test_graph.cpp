#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "smg/random.hpp"

using namespace smg;
using testutil::g;

namespace {

NodeSet labels(const MixedGraph& h, std::initializer_list<std::string_view> names) { return h.set_of(names); }

std::set<oracle::RibbonTriple> library_ribbons(const MixedGraph& h) {
  std::set<oracle::RibbonTriple> out;
  for (const RibbonReport& r : find_ribbons(h)) {
    oracle::RibbonTriple t{r.v.end1, r.v.inner, r.v.end2, r.v.first.mark_at(r.v.end1), r.v.second.mark_at(r.v.end2)};
    if (t.h > t.j) t = {t.j, t.i, t.h, t.at_j, t.at_h};
    out.insert(t);
  }
  return out;
}

}  // namespace

TEST_CASE("construction") {
  const auto one = MixedGraph::make({"a", "b"}, {{EdgeKind::Arrow, "a", "b"}});
  CHECK(one.size() == 2);
  CHECK(one.edge_count() == 1);
  const auto dup = MixedGraph::make({"a", "b"}, {{EdgeKind::Arrow, "a", "b"}, {EdgeKind::Arrow, "a", "b"}});
  CHECK(dup.edge_count() == 1);
  CHECK(dup == one);
  try {
    MixedGraph::make({"a"}, {{EdgeKind::Arrow, "a", "a"}});
    FAIL("loop accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LoopEdge);
  }
  CHECK_THROWS_AS(MixedGraph({"a b"}), Error);
}

TEST_CASE("multiple edges of different kinds coexist") {
  const auto h = g("a -> b\nb -> a\na <-> b\na -- b");
  CHECK(h.edge_count() == 4);
  CHECK(h.between(0, 1).size() == 4);
}

TEST_CASE("neighbourhoods") {
  const auto h = g("a -> b\nb <-> c\nc -- a");
  const NodeIndex a = h.index_of("a"), b = h.index_of("b");
  CHECK(parents(h, b) == NodeSet{a});
  CHECK(spouses(h, b) == labels(h, {"c"}));
  CHECK(neighbours(h, a) == labels(h, {"c"}));

  const auto cyc = g("a -> b\nb -> a");
  CHECK(parents(cyc, 0) == NodeSet{1});
  CHECK(parents(cyc, 1) == NodeSet{0});

  const MixedGraph iso({"x"});
  CHECK(parents(iso, 0).empty());
  CHECK(spouses(iso, 0).empty());
  CHECK(neighbours(iso, 0).empty());
}

TEST_CASE("ancestors") {
  const auto chain = g("a -> b\nb -> c");
  CHECK(ancestors(chain, labels(chain, {"c"})) == labels(chain, {"a", "b"}));
  const auto undirected = g("a <-> b\nb -- c");
  CHECK(ancestors(undirected, labels(undirected, {"c"})).empty());
  const auto cyc = g("a -> b\nb -> a");
  CHECK(ancestors(cyc, labels(cyc, {"a"})) == labels(cyc, {"a", "b"}));
  CHECK_THROWS_AS(ancestors(chain, NodeSet{7}), Error);
}

TEST_CASE("direction-preserving cycles") {
  CHECK(cyclic_nodes(g("a -> b\nb -> c")).empty());
  const auto two = g("a -> b\nb -> a");
  CHECK(cyclic_nodes(two) == two.all());
  const auto three = g("a -> b\nb -> c\nc -> a\nd -> a");
  CHECK(cyclic_nodes(three) == labels(three, {"a", "b", "c"}));
}

TEST_CASE("ribbons") {
  const auto h = g("h -> i\nj -> i\ni -- k");
  const auto rs = find_ribbons(h);
  REQUIRE(rs.size() == 1);
  CHECK(h.label(rs[0].v.end1) == "h");
  CHECK(h.label(rs[0].v.inner) == "i");
  CHECK(h.label(rs[0].v.end2) == "j");
  CHECK(!is_ribbonless(h));

  CHECK(find_ribbons(g("h -> i\nj -> i\ni -- k\nh -- j")).empty());

  // The witness may be a descendant of the inner node.
  const auto deep = g("h -> i\nj -> i\ni -> d\nd -- e");
  REQUIRE(find_ribbons(deep).size() == 1);
  CHECK(deep.label(find_ribbons(deep)[0].witness_node) == "d");

  // d -> i closes a cycle, so every pair of arrows into i is a ribbon.
  const auto on_cycle = g("h -> i\nj -> i\ni -> d\nd -> i");
  const auto cyc = find_ribbons(on_cycle);
  CHECK(cyc.size() == 3);
  for (const auto& r : cyc) CHECK(r.witness == RibbonReport::Witness::OnCycle);
}

TEST_CASE("ribbons of random DAGs") {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) CHECK(find_ribbons(random_dag(rng, uniform(rng, 1, 7), 0.4)).empty());
}

TEST_CASE("classify") {
  const auto rg_only = g("a -- b\nc -> b\nc <-> d\nc -> d");
  CHECK(classify(rg_only).contains(GraphClass::RG));
  CHECK(!classify(rg_only).contains(GraphClass::SG));

  const auto sg_only = g("a <-> b\na -> c\nc -> b");
  CHECK(classify(sg_only).contains(GraphClass::SG));
  CHECK(!classify(sg_only).contains(GraphClass::AG));

  const auto chain = g("a -> b\nb -> c");
  const std::vector<GraphClass> expected{GraphClass::LMG, GraphClass::DAG, GraphClass::RG, GraphClass::SG,
                                         GraphClass::AG};
  CHECK(classify(chain).members() == expected);

  CHECK(classify(g("a -- b\nb -- c")).contains(GraphClass::UG));
  CHECK(classify(g("a <-> b\nb <-> c")).contains(GraphClass::BG));
  CHECK(classify(g("a <-> b\nb <-> c")).contains(GraphClass::AG));
  // An arrowhead at a line endpoint rules out SG.
  CHECK(!is_summary_graph(g("a -- b\nc -> a")));
  CHECK(is_summary_graph(g("a -- b\na -> c")));
  // Ancestral graphs are simple.
  CHECK(!is_ancestral_graph(g("a <-> b\na -> b")));
  CHECK(is_summary_graph(g("a <-> b\na -> b")));
  CHECK(parse_class("Sg") == GraphClass::SG);
  CHECK(!parse_class("xyz").has_value());
}

TEST_CASE("induced subgraph and equality") {
  const auto chain = g("a -> b\nb -> c");
  const auto sub = induced_subgraph(chain, labels(chain, {"a", "b"}));
  CHECK(sub == g("a -> b"));
  CHECK(induced_subgraph(chain, {}).size() == 0);
  const auto mixed = g("a <-> b\na -- c");
  CHECK(induced_subgraph(mixed, labels(mixed, {"a", "c"})) == g("a -- c"));

  CHECK(g("a -> b") == g("a -> b"));
  CHECK(!(g("a -> b") == g("b -> a")));
  CHECK(!(g("a -> b") == g("x -> y")));
}

TEST_CASE("random graphs agree with the brute-force oracles") {
  Rng rng(2024);
  for (int k = 0; k < 10000; ++k) {
    const std::size_t n = uniform(rng, 1, 7);
    const MixedGraph h = random_lmg(rng, n, 0.1, 0.1, 0.25);
    const ClassSet cs = classify(h);
    CHECK((!cs.contains(GraphClass::AG) || cs.contains(GraphClass::SG)));
    CHECK((!cs.contains(GraphClass::SG) || cs.contains(GraphClass::RG)));
    CHECK(cs.contains(GraphClass::RG) == find_ribbons(h).empty());

    if (k % 10 != 0) continue;
    CHECK(library_ribbons(h) == oracle::ribbons(h));
    CHECK(cyclic_nodes(h) == oracle::on_cycle(h));
    bool arrows_only = true;
    for (const Edge& e : h.edges()) arrows_only = arrows_only && e.kind == EdgeKind::Arrow;
    CHECK(cs.contains(GraphClass::DAG) == (arrows_only && oracle::on_cycle(h).empty()));

    NodeSet s, t;
    for (NodeIndex v = 0; v < n; ++v) {
      const auto r = uniform(rng, 0, 3);
      if (r == 0) s.insert(v);
      if (r <= 1) t.insert(v);
    }
    const NodeSet an_s = ancestors(h, s);
    CHECK(an_s == oracle::strict_ancestors(h, s));
    CHECK(an_s.is_subset_of(ancestors(h, t)));
    const NodeSet closed = an_s | s;
    CHECK(ancestors(h, closed).is_subset_of(closed));
  }
}
