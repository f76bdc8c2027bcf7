#pragma once

// Random graphs and projection specs for property checks.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "smg/graph.hpp"
#include "smg/project.hpp"

namespace smg {

using Rng = std::mt19937_64;

// "a", "b", ..., "z", then "n26", "n27", ...
std::vector<std::string> node_labels(std::size_t n);

// Arrows follow a random topological order, each present with probability p.
MixedGraph random_dag(Rng& rng, std::size_t n, double p);
MixedGraph random_dag(Rng& rng, const std::vector<std::string>& labels, double p);

// Every possible edge independently present with its own probability.
MixedGraph random_lmg(Rng& rng, std::size_t n, double p_line, double p_arc, double p_arrow);

// A graph of the given class on n nodes. RG, SG and AG samples come either from
// rejection sampling of sparse mixed graphs or from projecting a random DAG with
// extra latent and selection nodes; UG, BG and DAG samples are direct.
MixedGraph random_graph_of_class(Rng& rng, GraphClass cls, std::size_t n);

// Each node lands in M with probability p_m, in C with probability p_c, and
// otherwise stays. Nodes in `exclude` always stay.
ProjectionSpec random_spec(Rng& rng, const MixedGraph& g, double p_m, double p_c,
                           const std::vector<std::string>& exclude = {});

// Uniform integer in [lo, hi].
std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);

}  // namespace smg
