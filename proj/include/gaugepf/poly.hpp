#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <map>
#include <span>
#include <vector>

#include "gaugepf/gauge.hpp"
#include "gaugepf/model.hpp"
#include "gaugepf/multigraph.hpp"

namespace gaugepf {

/// Largest number of variables a single node polynomial may carry.
inline constexpr std::size_t kMaxPolyVariables = 20;

/// Multilinear polynomial in a node's directed-edge variables. Keys are
/// subsets of `variables` as bitmasks; zero coefficients are not stored.
struct NodePoly {
  NodeId node;
  std::vector<DirectedEdgeId> variables;
  std::map<std::uint32_t, double> coefficients;

  [[nodiscard]] double evaluate(std::span<const double> x) const;

  friend bool operator==(const NodePoly&, const NodePoly&) = default;
};

[[nodiscard]] NodePoly node_poly_from_factor(NodeId node, const FactorTable& f);

/// h(x) kept as a product of node polynomials over a live multigraph.
class FactoredGaugePoly {
 public:
  FactoredGaugePoly() = default;
  /// `polys[i]` belongs to `graph.nodes()[i]` and uses its incidence list.
  FactoredGaugePoly(MultiGraph graph, std::vector<NodePoly> polys);

  static FactoredGaugePoly from_model(const MultiGM& m);

  [[nodiscard]] const MultiGraph& graph() const { return graph_; }
  [[nodiscard]] std::span<const NodePoly> node_polys() const { return polys_; }
  [[nodiscard]] const NodePoly& node_poly(NodeId id) const { return polys_[graph_.node_index(id)]; }

  /// h(x): product of the node evaluations.
  [[nodiscard]] double evaluate(const GaugeVector& x) const;

  friend bool operator==(const FactoredGaugePoly& a, const FactoredGaugePoly& b) {
    return a.polys_ == b.polys_;
  }

 private:
  MultiGraph graph_;
  std::vector<NodePoly> polys_;
};

/// Coefficients of h as a polynomial in (x(edge+), x(edge-)) with every other
/// variable fixed: h = h00 + h10 x+ + h01 x- + h11 x+ x-.
struct QuadCoeffs {
  double h00 = 0.0;
  double h10 = 0.0;
  double h01 = 0.0;
  double h11 = 0.0;
};

/// `x_rest` must hold values for every live edge; the entries of `edge`
/// itself are ignored. Throws LookupError on missing values.
[[nodiscard]] QuadCoeffs quad_coeffs(const FactoredGaugePoly& h, EdgeId edge, const GaugeVector& x_rest);

/// Applies (1 + d/dx+ d/dx-)((1 + x+ x-) . ) at x+ = x- = 0 for `edge`:
/// the node polynomials holding the edge's variables are replaced by
/// H00 + H11, merging two nodes when the edge is normal.
[[nodiscard]] FactoredGaugePoly exact_contract_poly(const FactoredGaugePoly& h, EdgeId edge);

/// h(x) / prod_live (1 + x+ x-); a scalar once no edges remain.
[[nodiscard]] double zeta_eval(const FactoredGaugePoly& h, const GaugeVector& x);

struct BistableReport {
  std::size_t samples = 0;
  std::size_t passed = 0;
  /// Largest h01 h10 / (h00 h11) seen; <= 1 means every sample passed.
  double worst_ratio = 0.0;
};

/// Samples the remaining variables log-uniformly in [1e-2, 1e2] and checks
/// h01 h10 <= h00 h11 (relative rounding slack 1e-12) at each point.
[[nodiscard]] BistableReport bistable_condition_sample(const FactoredGaugePoly& h, EdgeId edge,
                                                       std::size_t n_samples, std::uint64_t seed);

/// Draws a gauge for every live edge, log-uniform in [lo, hi].
template <typename Rng>
GaugeVector random_gauge(const MultiGraph& g, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  std::vector<EdgeId> edges;
  std::vector<double> values;
  for (const Edge& e : g.edges()) {
    edges.push_back(e.id);
    values.push_back(std::exp(u(rng)));
    values.push_back(std::exp(u(rng)));
  }
  return GaugeVector(std::move(edges), std::move(values));
}

}  // namespace gaugepf
