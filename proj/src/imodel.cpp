#include "smg/imodel.hpp"

#include <algorithm>
#include <bit>

#include "smg/msep.hpp"

namespace smg {

namespace {

std::vector<int> bits_of(std::uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

NodeSet to_node_set(std::uint64_t mask) {
  NodeSet s;
  for (int b : bits_of(mask)) s.insert(static_cast<NodeIndex>(b));
  return s;
}

void require_same_ground(const IndependenceModel& j1, const IndependenceModel& j2) {
  if (j1.ground != j2.ground) throw Error(ErrorKind::GroundMismatch, "models have different ground sets");
}

}  // namespace

IndependenceStatement IndependenceStatement::canonical(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  // Index order is label order, so comparing index lists compares label lists.
  if (bits_of(b) < bits_of(a)) std::swap(a, b);
  return {a, b, c};
}

std::uint64_t IndependenceModel::mask_of(const std::vector<std::string>& labels) const {
  std::uint64_t mask = 0;
  for (const auto& l : labels) {
    auto it = std::lower_bound(ground.begin(), ground.end(), l);
    if (it == ground.end() || *it != l) throw Error(ErrorKind::NotInGround, "'" + l + "' is not in the ground set");
    mask |= std::uint64_t{1} << (it - ground.begin());
  }
  return mask;
}

std::vector<std::string> IndependenceModel::labels_of(std::uint64_t mask) const {
  std::vector<std::string> out;
  for (int b : bits_of(mask)) out.push_back(ground.at(static_cast<std::size_t>(b)));
  return out;
}

std::string IndependenceModel::format(const IndependenceStatement& s) const {
  auto join = [&](std::uint64_t mask) {
    std::string out;
    for (const auto& l : labels_of(mask)) {
      if (!out.empty()) out += ',';
      out += l;
    }
    return out;
  };
  std::string out = join(s.a) + " _||_ " + join(s.b);
  if (s.c) out += " | " + join(s.c);
  return out;
}

IndependenceModel independence_model(const MixedGraph& g, std::size_t bound) {
  const std::size_t n = g.size();
  if (n > bound || n > kMaxModelGround) {
    throw Error(ErrorKind::TooLarge, "model enumeration over " + std::to_string(n) + " nodes exceeds the bound of " +
                                         std::to_string(std::min(bound, kMaxModelGround)));
  }
  IndependenceModel model;
  model.ground = g.labels();
  const ConnectionEngine engine(g);
  const std::uint64_t full = n == 0 ? 0 : (std::uint64_t{1} << n) - 1;
  for (std::uint64_t c = 0;; c = (c - full) & full) {
    const std::uint64_t rest = full & ~c;
    const NodeSet cs = to_node_set(c);
    // Nonempty A ⊆ rest, then nonempty B ⊆ rest \ A; keep canonical orientation only.
    for (std::uint64_t a = rest; a; a = (a - 1) & rest) {
      const std::uint64_t rest_b = rest & ~a;
      const NodeSet as = to_node_set(a);
      for (std::uint64_t b = rest_b; b; b = (b - 1) & rest_b) {
        const auto s = IndependenceStatement::canonical(a, b, c);
        if (s.a != a) continue;
        if (engine.separated(as, to_node_set(b), cs)) model.statements.insert(s);
      }
    }
    if (c == full) break;
  }
  return model;
}

IndependenceModel marginalise_condition(const IndependenceModel& j, const std::vector<std::string>& m,
                                        const std::vector<std::string>& c) {
  const std::uint64_t mm = j.mask_of(m);
  const std::uint64_t cm = j.mask_of(c);
  if (mm & cm) throw Error(ErrorKind::NotDisjoint, "marginalised and conditioned sets overlap");
  const std::uint64_t removed = mm | cm;

  IndependenceModel out;
  std::vector<int> new_bit(j.ground.size(), -1);
  for (std::size_t k = 0; k < j.ground.size(); ++k) {
    if (removed & (std::uint64_t{1} << k)) continue;
    new_bit[k] = static_cast<int>(out.ground.size());
    out.ground.push_back(j.ground[k]);
  }
  auto remap = [&](std::uint64_t mask) {
    std::uint64_t r = 0;
    for (int b : bits_of(mask)) r |= std::uint64_t{1} << new_bit[static_cast<std::size_t>(b)];
    return r;
  };
  for (const auto& s : j.statements) {
    if ((s.c & cm) != cm) continue;
    const std::uint64_t d = s.c & ~cm;
    if ((s.a | s.b | d) & removed) continue;
    out.statements.insert(IndependenceStatement::canonical(remap(s.a), remap(s.b), remap(d)));
  }
  return out;
}

bool model_equal(const IndependenceModel& j1, const IndependenceModel& j2) {
  require_same_ground(j1, j2);
  return j1.statements == j2.statements;
}

ModelDiff model_diff(const IndependenceModel& j1, const IndependenceModel& j2) {
  require_same_ground(j1, j2);
  ModelDiff d;
  std::set_difference(j2.statements.begin(), j2.statements.end(), j1.statements.begin(), j1.statements.end(),
                      std::inserter(d.missing, d.missing.end()));
  std::set_difference(j1.statements.begin(), j1.statements.end(), j2.statements.begin(), j2.statements.end(),
                      std::inserter(d.extra, d.extra.end()));
  return d;
}

bool conforms(const IndependenceModel& j, const MixedGraph& g) {
  if (j.ground != g.labels()) throw Error(ErrorKind::GroundMismatch, "model ground differs from the graph's nodes");
  for (const auto& s : j.statements) {
    for (int x : bits_of(s.a)) {
      for (int y : bits_of(s.b)) {
        if (g.adjacent(static_cast<NodeIndex>(x), static_cast<NodeIndex>(y))) return false;
      }
    }
  }
  return true;
}

nlohmann::ordered_json model_to_json(const IndependenceModel& j) {
  struct Row {
    std::vector<std::string> a, b, c;
    auto operator<=>(const Row&) const = default;
  };
  std::vector<Row> rows;
  for (const auto& s : j.statements) rows.push_back({j.labels_of(s.a), j.labels_of(s.b), j.labels_of(s.c)});
  std::sort(rows.begin(), rows.end());
  nlohmann::ordered_json doc;
  doc["ground"] = j.ground;
  doc["statements"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json s;
    s["A"] = r.a;
    s["B"] = r.b;
    s["C"] = r.c;
    doc["statements"].push_back(std::move(s));
  }
  return doc;
}

IndependenceModel model_from_json(const nlohmann::json& doc) {
  IndependenceModel j;
  try {
    j.ground = doc.at("ground").get<std::vector<std::string>>();
    std::sort(j.ground.begin(), j.ground.end());
    if (std::adjacent_find(j.ground.begin(), j.ground.end()) != j.ground.end()) {
      throw Error(ErrorKind::ParseError, "duplicate ground label");
    }
    if (j.ground.size() > 64) throw Error(ErrorKind::TooLarge, "model ground exceeds 64 nodes");
    for (const auto& s : doc.at("statements")) {
      const auto a = j.mask_of(s.at("A").get<std::vector<std::string>>());
      const auto b = j.mask_of(s.at("B").get<std::vector<std::string>>());
      const auto c = j.mask_of(s.at("C").get<std::vector<std::string>>());
      if ((a & b) || (a & c) || (b & c)) throw Error(ErrorKind::NotDisjoint, "statement sets overlap");
      if (a && b) j.statements.insert(IndependenceStatement::canonical(a, b, c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed model JSON: ") + e.what());
  }
  return j;
}

}  // namespace smg
