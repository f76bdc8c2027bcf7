#include "smg/random.hpp"

#include <algorithm>
#include <numeric>

namespace smg {

std::vector<std::string> node_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(k < 26 ? std::string(1, static_cast<char>('a' + k)) : "n" + std::to_string(k));
  }
  return out;
}

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

namespace {

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

MixedGraph random_dag(Rng& rng, const std::vector<std::string>& labels, double p) {
  MixedGraph g(labels);
  std::vector<NodeIndex> order(g.size());
  std::iota(order.begin(), order.end(), NodeIndex{0});
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t x = 0; x < order.size(); ++x) {
    for (std::size_t y = x + 1; y < order.size(); ++y) {
      if (coin(rng, p)) g.add_edge(Edge::arrow(order[x], order[y]));
    }
  }
  return g;
}

MixedGraph random_dag(Rng& rng, std::size_t n, double p) { return random_dag(rng, node_labels(n), p); }

MixedGraph random_lmg(Rng& rng, std::size_t n, double p_line, double p_arc, double p_arrow) {
  MixedGraph g(node_labels(n));
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = u + 1; v < n; ++v) {
      if (coin(rng, p_line)) g.add_edge(Edge::line(u, v));
      if (coin(rng, p_arc)) g.add_edge(Edge::arc(u, v));
      if (coin(rng, p_arrow)) g.add_edge(Edge::arrow(u, v));
      if (coin(rng, p_arrow)) g.add_edge(Edge::arrow(v, u));
    }
  }
  return g;
}

namespace {

bool in_class(const MixedGraph& g, GraphClass cls) { return classify(g).contains(cls); }

// Projects a random DAG with up to `extra` hidden nodes onto n labeled nodes.
MixedGraph projected_sample(Rng& rng, GraphClass cls, std::size_t n) {
  const std::size_t extra = uniform(rng, 1, 3);
  std::vector<std::string> labels = node_labels(n);
  std::vector<std::string> hidden;
  for (std::size_t k = 0; k < extra; ++k) hidden.push_back("x" + std::to_string(k));
  labels.insert(labels.end(), hidden.begin(), hidden.end());
  const MixedGraph dag = random_dag(rng, labels, std::uniform_real_distribution<double>(0.2, 0.6)(rng));
  ProjectionSpec spec;
  for (const auto& h : hidden) (coin(rng, 0.6) ? spec.marginalised : spec.conditioned).push_back(h);
  switch (cls) {
    case GraphClass::SG: return project_sg(dag, spec);
    case GraphClass::AG: return project_ag(dag, spec);
    default: return project_rg(dag, spec);
  }
}

}  // namespace

MixedGraph random_graph_of_class(Rng& rng, GraphClass cls, std::size_t n) {
  switch (cls) {
    case GraphClass::DAG: return random_dag(rng, n, std::uniform_real_distribution<double>(0.1, 0.7)(rng));
    case GraphClass::UG: return random_lmg(rng, n, 0.4, 0.0, 0.0);
    case GraphClass::BG: return random_lmg(rng, n, 0.0, 0.4, 0.0);
    case GraphClass::LMG: return random_lmg(rng, n, 0.15, 0.15, 0.15);
    default: break;
  }
  if (coin(rng, 0.5)) {
    const double scale = std::uniform_real_distribution<double>(0.05, 0.25)(rng);
    for (int attempt = 0; attempt < 200; ++attempt) {
      MixedGraph g = random_lmg(rng, n, scale * 0.6, scale, scale);
      if (in_class(g, cls)) return g;
    }
  }
  return projected_sample(rng, cls, n);
}

ProjectionSpec random_spec(Rng& rng, const MixedGraph& g, double p_m, double p_c,
                           const std::vector<std::string>& exclude) {
  ProjectionSpec spec;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& l : g.labels()) {
    if (std::find(exclude.begin(), exclude.end(), l) != exclude.end()) continue;
    const double x = u(rng);
    if (x < p_m) {
      spec.marginalised.push_back(l);
    } else if (x < p_m + p_c) {
      spec.conditioned.push_back(l);
    }
  }
  return spec;
}

}  // namespace smg
