#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gaugepf/multigraph.hpp"

namespace gaugepf {

/// Default cap on |E| for exhaustive enumeration (2^24 terms).
inline constexpr std::size_t kEnumerationGuard = 24;

/// Dense nonnegative table over the bit-configurations of a node's ordered
/// directed edges; bit i of the index belongs to `variables()[i]`.
class FactorTable {
 public:
  FactorTable() : values_{1.0} {}
  FactorTable(std::vector<DirectedEdgeId> variables, std::vector<double> values);

  [[nodiscard]] std::span<const DirectedEdgeId> variables() const { return variables_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::size_t arity() const { return variables_.size(); }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t config) const { return values_[config]; }

  /// All entries strictly positive.
  [[nodiscard]] bool soft() const;
  [[nodiscard]] double max_entry() const;
  /// Bit position of `d`, or -1.
  [[nodiscard]] int position(DirectedEdgeId d) const;

  friend bool operator==(const FactorTable&, const FactorTable&) = default;

 private:
  std::vector<DirectedEdgeId> variables_;
  std::vector<double> values_;
};

/// Configuration: one bit per edge, indexed by position in `graph.edges()`.
using Config = std::vector<std::uint8_t>;

/// Multi-graph graphical model: one factor per node, over that node's
/// incidence list.
class MultiGM {
 public:
  MultiGM() = default;
  /// `factors[i]` belongs to `graph.nodes()[i]`; its variables must equal the
  /// node's incidence list.
  MultiGM(MultiGraph graph, std::vector<FactorTable> factors);

  [[nodiscard]] const MultiGraph& graph() const { return graph_; }
  [[nodiscard]] std::span<const FactorTable> factors() const { return factors_; }
  [[nodiscard]] const FactorTable& factor(NodeId id) const { return factors_[graph_.node_index(id)]; }
  [[nodiscard]] const FactorTable& factor_at(std::size_t node_pos) const { return factors_[node_pos]; }
  [[nodiscard]] bool soft() const;

 private:
  MultiGraph graph_;
  std::vector<FactorTable> factors_;
};

/// Builds a factor table from values laid out over `order`, permuting it to
/// the node's incidence order. Throws InputError if `order` is not a
/// permutation of the incidence list.
[[nodiscard]] FactorTable reorder_table(std::span<const DirectedEdgeId> incidence,
                                        std::span<const DirectedEdgeId> order,
                                        std::span<const double> values);

/// For each node, the table index selected by `sigma` (a self-edge reads its
/// bit twice).
[[nodiscard]] std::vector<std::size_t> local_configs(const MultiGM& m, std::span<const std::uint8_t> sigma);

[[nodiscard]] double evaluate_weight(const MultiGM& m, std::span<const std::uint8_t> sigma);

/// Sum of weights over all 2^|E| configurations, in ascending index order
/// (edge position i is bit i of the index).
[[nodiscard]] double partition_exact(const MultiGM& m, std::size_t guard = kEnumerationGuard);

struct MapResult {
  double energy = 0.0;  ///< -log of the largest weight
  Config argmax;        ///< smallest index among ties
};

[[nodiscard]] MapResult map_energy_exact(const MultiGM& m, std::size_t guard = kEnumerationGuard);

/// Raises every entry to at least `eps` times its table's maximum.
[[nodiscard]] MultiGM soften(const MultiGM& m, double eps);

/// Sums out `edge`, merging factors as the graph contraction merges nodes.
/// The partition function is unchanged.
[[nodiscard]] MultiGM contract_model(const MultiGM& m, EdgeId edge);

}  // namespace gaugepf
