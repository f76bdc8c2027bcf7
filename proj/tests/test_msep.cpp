#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "oracles.hpp"
#include "smg/msep.hpp"
#include "smg/random.hpp"

using namespace smg;
using testutil::g;

namespace {

ConnectionQuery query(const MixedGraph& h, std::string_view s, std::string_view t,
                      std::initializer_list<std::string_view> m, std::initializer_list<std::string_view> c) {
  return {h.index_of(s), h.index_of(t), h.set_of(m), h.set_of(c)};
}

constexpr Signature kTT{Mark::Tail, Mark::Tail};
constexpr Signature kTH{Mark::Tail, Mark::Head};
constexpr Signature kHH{Mark::Head, Mark::Head};

}  // namespace

TEST_CASE("connecting paths") {
  const auto chain = g("a -> m\nm -> b");
  CHECK(connecting_path_exists(chain, query(chain, "a", "b", {"m"}, {})));
  CHECK(!connecting_path_exists(chain, query(chain, "a", "b", {}, {})));

  const auto coll = g("a -> c\nb -> c");
  CHECK(!connecting_path_exists(coll, query(coll, "a", "b", {}, {})));
  CHECK(connecting_path_exists(coll, query(coll, "a", "b", {}, {"c"})));

  const auto desc = g("a -> c\nb -> c\nc -> d");
  CHECK(connecting_path_exists(desc, query(desc, "a", "b", {}, {"d"})));
}

TEST_CASE("query validation") {
  const auto chain = g("a -> m\nm -> b");
  CHECK_THROWS_AS(connecting_path_exists(chain, {0, 0, {}, {}}), Error);
  CHECK_THROWS_AS(connecting_path_exists(chain, {0, 9, {}, {}}), Error);
  try {
    connecting_path_exists(chain, query(chain, "a", "b", {}, {"a"}));
    FAIL("endpoint accepted as enabler");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OverlapError);
  }
}

TEST_CASE("m-separation") {
  const auto chain = g("a -> m\nm -> b");
  CHECK(m_separated(chain, chain.set_of({"a"}), chain.set_of({"b"}), chain.set_of({"m"})));
  CHECK(!m_separated(chain, chain.set_of({"a"}), chain.set_of({"b"}), {}));
  CHECK(m_separated(chain, {}, chain.set_of({"b"}), {}));
  const auto adj = g("a <-> b\nb -- c\nc -> a");
  for (const NodeSet& c : {NodeSet{}, adj.set_of({"c"})}) {
    CHECK(!m_separated(adj, adj.set_of({"a"}), adj.set_of({"b"}), c));
  }
  try {
    m_separated(chain, chain.set_of({"a"}), chain.set_of({"a", "b"}), {});
    FAIL("overlap accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDisjoint);
  }
}

TEST_CASE("path enumeration") {
  const auto chain = g("a -> m\nm -> b");
  const auto one = enumerate_connecting_paths(chain, query(chain, "a", "b", {"m"}, {}));
  REQUIRE(one.paths.size() == 1);
  CHECK(one.paths[0].nodes == std::vector<NodeIndex>{0, 2, 1});

  const auto coll = g("a -> c\nb -> c");
  CHECK(enumerate_connecting_paths(coll, query(coll, "a", "b", {}, {})).paths.empty());

  const auto par = g("a -> m1\nm1 -> b\na -> m2\nm2 -> b");
  const auto two = enumerate_connecting_paths(par, query(par, "a", "b", {"m1", "m2"}, {}));
  CHECK(two.paths.size() == 2);
  CHECK(!two.truncated);
  CHECK(enumerate_connecting_paths(par, query(par, "a", "b", {"m1", "m2"}, {}), 1).truncated);

  const auto w = find_connecting_path(par, query(par, "a", "b", {"m1", "m2"}, {}));
  REQUIRE(w.has_value());
  CHECK(w->signature() == kTH);
}

TEST_CASE("endpoint-identical connections") {
  const auto fork = g("m -> a\nm -> b");
  CHECK(endpoint_identical_connection(fork, fork.index_of("a"), fork.index_of("b"), fork.set_of({"m"}), {}) ==
        SignatureSet{kHH});
  const auto coll = g("a -> s\nb -> s");
  CHECK(endpoint_identical_connection(coll, coll.index_of("a"), coll.index_of("b"), {}, coll.set_of({"s"})) ==
        SignatureSet{kTT});
  const auto edge = g("a -> b");
  CHECK(endpoint_identical_connection(edge, 0, 1, {}, {}) == SignatureSet{kTH});
  CHECK_THROWS_AS(endpoint_identical_connection(edge, 0, 1, NodeSet{0}, {}), Error);
}

TEST_CASE("engines agree with path enumeration and the oracles") {
  Rng rng(77);
  int connected = 0;
  for (int k = 0; k < 1500; ++k) {
    const std::size_t n = uniform(rng, 2, 7);
    const MixedGraph h = k % 2 ? random_lmg(rng, n, 0.1, 0.15, 0.3) : random_graph_of_class(rng, GraphClass::RG, n);
    const NodeIndex s = static_cast<NodeIndex>(uniform(rng, 0, n - 1));
    NodeIndex t = static_cast<NodeIndex>(uniform(rng, 0, n - 2));
    if (t >= s) ++t;
    NodeSet m, c;
    for (NodeIndex v = 0; v < n; ++v) {
      if (v == s || v == t) continue;
      const auto r = uniform(rng, 0, 2);
      if (r == 0) m.insert(v);
      if (r == 1) c.insert(v);
    }
    const ConnectionQuery q{s, t, m, c};
    const bool exists = connecting_path_exists(h, q);
    connected += exists;
    CHECK(exists == !enumerate_connecting_paths(h, q).paths.empty());
    const SignatureSet sigs = oracle::path_signatures(h, s, t, m, c);
    CHECK(exists == !sigs.empty());
    const ConnectionEngine paths(h, ConnectionEngine::Strategy::PathSearch);
    CHECK(paths.signatures(q) == sigs);
    if (is_ribbonless(h)) {
      const ConnectionEngine walks(h, ConnectionEngine::Strategy::WalkReachability);
      CHECK(walks.signatures(q) == sigs);
    }
  }
  CHECK(connected > 100);
}

TEST_CASE("set separation properties") {
  Rng rng(91);
  for (int k = 0; k < 600; ++k) {
    const std::size_t n = uniform(rng, 2, 6);
    const MixedGraph h = random_lmg(rng, n, 0.1, 0.15, 0.3);
    NodeSet a, b, c;
    for (NodeIndex v = 0; v < n; ++v) {
      const auto r = uniform(rng, 0, 3);
      if (r == 0) a.insert(v);
      if (r == 1) b.insert(v);
      if (r == 2) c.insert(v);
    }
    const bool sep = m_separated(h, a, b, c);
    CHECK(sep == m_separated(h, b, a, c));
    CHECK(sep == oracle::m_separated_paths(h, a, b, c));
    // Allowing non-colliders anywhere outside C gives the same verdict.
    bool wide = true;
    for (NodeIndex s : a) {
      for (NodeIndex t : b) {
        if (!oracle::path_signatures(h, s, t, h.all() - c - NodeSet{s, t}, c).empty()) wide = false;
      }
    }
    CHECK(sep == wide);
    for (NodeIndex s : a) {
      for (NodeIndex t : b) {
        if (h.adjacent(s, t)) CHECK(!sep);
      }
    }
  }
}

TEST_CASE("DAG separation matches moralisation") {
  Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = uniform(rng, 2, 7);
    const MixedGraph dag = random_dag(rng, n, 0.4);
    NodeSet a, b, c;
    for (NodeIndex v = 0; v < n; ++v) {
      const auto r = uniform(rng, 0, 3);
      if (r == 0) a.insert(v);
      if (r == 1) b.insert(v);
      if (r == 2) c.insert(v);
    }
    CHECK(m_separated(dag, a, b, c) == oracle::d_separated_moral(dag, a, b, c));
  }
}
