#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gaugepf/model.hpp"
#include "gaugepf/multigraph.hpp"

namespace gaugepf {

/// Smallest gauge value accepted by `gauge_matrix`.
inline constexpr double kMinGauge = 1e-12;

/// Strictly positive value per directed edge (x-representation of a gauge).
///
/// Values are stored per edge id as (x(plus), x(minus)); lookups by id, so a
/// gauge built for a graph can be read on any subgraph of it.
class GaugeVector {
 public:
  GaugeVector() = default;
  /// `values[2k]` and `values[2k+1]` are x(edges[k]+) and x(edges[k]-).
  GaugeVector(std::vector<EdgeId> edges, std::vector<double> values);

  static GaugeVector constant(const MultiGraph& g, double value);

  [[nodiscard]] std::span<const EdgeId> edges() const { return edges_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] bool contains(EdgeId e) const;

  /// Throws LookupError for edges not covered.
  [[nodiscard]] double operator[](DirectedEdgeId d) const { return values_[slot(d)]; }
  void set(DirectedEdgeId d, double value);

  /// Gauge values of a node's incident directed edges, in incidence order.
  [[nodiscard]] std::vector<double> at_node(const MultiGraph& g, std::size_t node_pos) const;

  /// x(plus) * x(minus) for the edge.
  [[nodiscard]] double product(EdgeId e) const;

  friend bool operator==(const GaugeVector&, const GaugeVector&) = default;

 private:
  [[nodiscard]] std::size_t slot(DirectedEdgeId d) const;

  std::vector<EdgeId> edges_;
  std::vector<double> values_;
};

/// Row index is the transformed bit, column index the original bit.
using GaugeMatrix = std::array<std::array<double, 2>, 2>;

/// Gauge matrix of a directed edge with value `x_self` whose reversal has
/// value `x_sibling`. The sibling's matrix is `gauge_matrix(x_sibling, x_self)`
/// and the pair satisfies G(p, q)^T G(q, p) = I.
[[nodiscard]] GaugeMatrix gauge_matrix(double x_self, double x_sibling);

/// Factor tables after a gauge transformation; entries may be negative.
struct GaugedModel {
  MultiGraph graph;
  std::vector<std::vector<double>> tables;
};

[[nodiscard]] GaugedModel transform_factors(const MultiGM& m, const GaugeVector& x);

/// prod_a f~_a(sigma_a): one term of the gauge-transformed series.
[[nodiscard]] double gauged_term(const GaugedModel& gm, std::span<const std::uint8_t> sigma);

/// Sum of `gauged_term` over all configurations (equals Z for any gauge).
[[nodiscard]] double gauged_sum(const GaugedModel& gm, std::size_t guard = kEnumerationGuard);

/// sum_s f(s) prod_i x_i^{s_i}, with `x_a` in the table's variable order.
[[nodiscard]] double h_node(const FactorTable& f, std::span<const double> x_a);
[[nodiscard]] double h_node(const MultiGM& m, NodeId a, const GaugeVector& x);

/// The sigma = 0 term: prod_a h_a(x_a) / prod_edges (1 + x+ x-).
[[nodiscard]] double gauge_function(const MultiGM& m, const GaugeVector& x);
[[nodiscard]] double log_gauge_function(const MultiGM& m, const GaugeVector& x);

/// Q_a(x_a; sigma_a) with `sigma_a` a bitmask over the node's incidence list:
///   prod_{colored d} (1 + p_d)/p_d * sum_s f(s) prod_d x_d^{s_d} prod_{colored d} (s_d - b_d),
/// where p_d = x_d x_{reverse(d)} and b_d = p_d / (1 + p_d).
[[nodiscard]] double q_node(const MultiGM& m, const GaugeVector& x, NodeId a, std::uint32_t sigma_a);

/// One term z(sigma | x) of the gauge series, assembled from `q_node`.
[[nodiscard]] double z_sigma(const MultiGM& m, const GaugeVector& x, std::span<const std::uint8_t> sigma);

}  // namespace gaugepf
