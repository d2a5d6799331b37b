#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "gaugepf/model.hpp"

namespace gaugepf {

struct RandomModelOptions {
  std::size_t num_edges = 6;
  double self_edge_probability = 0.25;
  /// Largest incidence-list length of any node (self-edges count twice).
  std::size_t max_degree = 8;
  /// Factor entries are log-uniform in [entry_lo, entry_hi].
  double entry_lo = 0.1;
  double entry_hi = 10.0;
};

/// Soft model with a mix of self, normal and parallel edges. The node count
/// is drawn from [ceil(num_edges / 2), num_edges + 1] (at least one node).
[[nodiscard]] MultiGM random_soft_model(std::mt19937_64& rng, const RandomModelOptions& opts = {});

/// Soft model on a random tree with `num_edges` edges and random orientations.
[[nodiscard]] MultiGM random_tree_model(std::mt19937_64& rng, std::size_t num_edges, double entry_lo = 0.1,
                                        double entry_hi = 10.0);

/// Fills every table of `g` with log-uniform entries.
[[nodiscard]] MultiGM random_factors(const MultiGraph& g, std::mt19937_64& rng, double entry_lo = 0.1,
                                     double entry_hi = 10.0);

enum class MatchingKind {
  Perfect,      ///< every vertex matched exactly once (permanent)
  MonomerDimer  ///< every vertex matched at most once
};

/// Bipartite matching model: rows are nodes 0..rows-1, columns follow. Every
/// edge (i, j) runs from row i (tail) to column j (head). A row factor gives
/// weight w to a single chosen edge of weight w; a column factor gives 1.
/// Perfect matching puts weight 0 on the empty choice, monomer-dimer 1.
[[nodiscard]] MultiGM matching_model(std::size_t rows, std::size_t cols,
                                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                     const std::vector<double>& weights, MatchingKind kind);

/// Perfect-matching model of the complete bipartite graph with matrix `a`.
[[nodiscard]] MultiGM permanent_model(const std::vector<std::vector<double>>& a);

/// Two nodes and one edge with f_a = (fa0, fa1) and f_b = (fb0, fb1).
[[nodiscard]] MultiGM two_node_model(double fa0, double fa1, double fb0, double fb1);

/// One node with one self-edge; `table` is indexed by (bit of +) + 2 (bit of -).
[[nodiscard]] MultiGM bouquet_model(const std::vector<double>& table);

/// Triangle with every factor entry equal to `value`.
[[nodiscard]] MultiGM triangle_model(double value = 1.0);

}  // namespace gaugepf
