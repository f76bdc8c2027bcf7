#pragma once

// Independence models stored extensionally: every non-trivial statement
// ⟨A,B|C⟩ is listed. Statements with an empty A or B hold in every model and are
// never stored.

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "smg/graph.hpp"

namespace smg {

// Node sets are bit masks over the model's ground list (bit k = ground[k]).
struct IndependenceStatement {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;

  // Orders (A, B) so that A is the lexicographically smaller sorted set.
  static IndependenceStatement canonical(std::uint64_t a, std::uint64_t b, std::uint64_t c);

  auto operator<=>(const IndependenceStatement&) const = default;
};

struct IndependenceModel {
  std::vector<std::string> ground;  // sorted
  std::set<IndependenceStatement> statements;

  bool contains(const IndependenceStatement& s) const { return statements.contains(s); }
  std::uint64_t mask_of(const std::vector<std::string>& labels) const;  // throws NotInGround
  std::vector<std::string> labels_of(std::uint64_t mask) const;
  // "a,b _||_ c | d"; the conditioning part is omitted when empty.
  std::string format(const IndependenceStatement& s) const;
};

inline constexpr std::size_t kDefaultModelBound = 8;
inline constexpr std::size_t kMaxModelGround = 20;

// J_m(G). Throws TooLarge above `bound` nodes.
IndependenceModel independence_model(const MixedGraph& g, std::size_t bound = kDefaultModelBound);

// α(J; M, C). Throws NotDisjoint when M and C overlap and NotInGround for
// unknown labels.
IndependenceModel marginalise_condition(const IndependenceModel& j, const std::vector<std::string>& m,
                                        const std::vector<std::string>& c);

// Throw GroundMismatch when the grounds differ.
bool model_equal(const IndependenceModel& j1, const IndependenceModel& j2);
struct ModelDiff {
  std::set<IndependenceStatement> missing;  // in j2, absent from j1
  std::set<IndependenceStatement> extra;    // in j1, absent from j2
};
ModelDiff model_diff(const IndependenceModel& j1, const IndependenceModel& j2);

// No stored statement separates two adjacent nodes of g.
bool conforms(const IndependenceModel& j, const MixedGraph& g);

nlohmann::ordered_json model_to_json(const IndependenceModel& j);
IndependenceModel model_from_json(const nlohmann::json& doc);

}  // namespace smg
