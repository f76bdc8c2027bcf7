#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "smg/imodel.hpp"
#include "smg/project.hpp"
#include "smg/random.hpp"

using namespace smg;
using testutil::g;

namespace {

IndependenceStatement st(const IndependenceModel& j, std::vector<std::string> a, std::vector<std::string> b,
                         std::vector<std::string> c = {}) {
  return IndependenceStatement::canonical(j.mask_of(a), j.mask_of(b), j.mask_of(c));
}

IndependenceModel empty_model(std::vector<std::string> ground) { return {std::move(ground), {}}; }

}  // namespace

TEST_CASE("induced models") {
  const auto iso = independence_model(MixedGraph({"a", "b"}));
  CHECK(iso.statements.size() == 1);
  CHECK(iso.contains(st(iso, {"a"}, {"b"})));

  CHECK(independence_model(g("a -> b")).statements.empty());

  const auto coll = independence_model(g("a -> c\nb -> c"));
  CHECK(coll.statements.size() == 1);
  CHECK(coll.contains(st(coll, {"a"}, {"b"})));
  CHECK(coll.format(*coll.statements.begin()) == "a _||_ b");

  CHECK_THROWS_AS(independence_model(MixedGraph(node_labels(9))), Error);
}

TEST_CASE("marginalise and condition") {
  IndependenceModel j = empty_model({"a", "b", "c"});
  j.statements.insert(st(j, {"a"}, {"b"}, {"c"}));
  const auto cond = marginalise_condition(j, {}, {"c"});
  CHECK(cond.ground == std::vector<std::string>{"a", "b"});
  CHECK(cond.statements == std::set{st(cond, {"a"}, {"b"})});
  CHECK(marginalise_condition(j, {"c"}, {}).statements.empty());

  const auto fork = independence_model(g("m -> a\nm -> b"));
  CHECK(marginalise_condition(fork, {"m"}, {}).statements.empty());

  CHECK_THROWS_AS(marginalise_condition(j, {"c"}, {"c"}), Error);
  try {
    marginalise_condition(j, {"z"}, {});
    FAIL("unknown label accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInGround);
  }
}

TEST_CASE("model comparison") {
  const auto fork = independence_model(g("m -> a\nm -> b"));
  CHECK(model_equal(fork, fork));

  IndependenceModel none = empty_model({"a", "b"});
  IndependenceModel one = none;
  one.statements.insert(st(one, {"a"}, {"b"}));
  CHECK(!model_equal(none, one));
  const ModelDiff d = model_diff(none, one);
  CHECK(d.missing == one.statements);
  CHECK(d.extra.empty());
  CHECK_THROWS_AS(model_equal(none, fork), Error);
}

TEST_CASE("conformity") {
  CHECK(!conforms([] {
    IndependenceModel j = empty_model({"a", "b"});
    j.statements.insert({1, 2, 0});
    return j;
  }(), g("a -> b")));
  CHECK(conforms(empty_model({"a", "b"}), g("a -> b")));
  Rng rng(8);
  for (int k = 0; k < 50; ++k) {
    const MixedGraph h = random_lmg(rng, uniform(rng, 1, 5), 0.1, 0.2, 0.3);
    CHECK(conforms(independence_model(h), h));
  }
}

TEST_CASE("models agree with the path oracle") {
  Rng rng(12);
  for (int k = 0; k < 60; ++k) {
    const MixedGraph h = random_lmg(rng, uniform(rng, 1, 5), 0.15, 0.2, 0.3);
    CHECK(model_equal(independence_model(h), oracle::independence_model(h)));
  }
}

TEST_CASE("operator properties") {
  Rng rng(31);
  for (int k = 0; k < 80; ++k) {
    const MixedGraph dag = random_dag(rng, uniform(rng, 2, 6), 0.4);
    const ProjectionSpec spec = random_spec(rng, dag, 0.3, 0.3);
    const IndependenceModel j = independence_model(dag);
    const auto both = marginalise_condition(j, spec.marginalised, spec.conditioned);
    const auto m_first = marginalise_condition(marginalise_condition(j, spec.marginalised, {}), {}, spec.conditioned);
    const auto c_first = marginalise_condition(marginalise_condition(j, {}, spec.conditioned), spec.marginalised, {});
    CHECK(model_equal(both, m_first));
    CHECK(model_equal(both, c_first));
    CHECK(both.ground.size() == dag.size() - spec.marginalised.size() - spec.conditioned.size());

    // Decomposition.
    for (const auto& s : j.statements) {
      for (std::uint64_t a = s.a; a; a = (a - 1) & s.a) {
        for (std::uint64_t b = s.b; b; b = (b - 1) & s.b) {
          CHECK(j.contains(IndependenceStatement::canonical(a, b, s.c)));
        }
      }
    }
  }
}

TEST_CASE("JSON round trip") {
  const auto j = independence_model(g("a -> c\nb -> c\nc -> d"));
  const auto doc = model_to_json(j);
  CHECK(doc["ground"].size() == 4);
  CHECK(model_equal(model_from_json(nlohmann::json::parse(doc.dump())), j));
  CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"ground": 3})")), Error);
  CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"ground": ["a"], "statements": [{"A": ["z"], "B": [], "C": []}]})")),
                  Error);
}
