#include "gaugepf/poly.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "gaugepf/errors.hpp"
#include "internal/bits.hpp"

namespace gaugepf {

double NodePoly::evaluate(std::span<const double> x) const {
  if (x.size() != variables.size()) throw InputError("evaluation point does not match polynomial variables");
  double sum = 0.0;
  for (const auto& [mask, c] : coefficients) {
    double term = c;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if ((mask >> i) & 1U) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

NodePoly node_poly_from_factor(NodeId node, const FactorTable& f) {
  if (f.arity() > kMaxPolyVariables) {
    throw GuardError("node polynomial would carry " + std::to_string(f.arity()) +
                     " variables; the limit is " + std::to_string(kMaxPolyVariables) +
                     ", reduce the instance size");
  }
  NodePoly p{node, std::vector<DirectedEdgeId>(f.variables().begin(), f.variables().end()), {}};
  for (std::size_t s = 0; s < f.size(); ++s) {
    if (f[s] != 0.0) p.coefficients.emplace(static_cast<std::uint32_t>(s), f[s]);
  }
  return p;
}

FactoredGaugePoly::FactoredGaugePoly(MultiGraph graph, std::vector<NodePoly> polys)
    : graph_(std::move(graph)), polys_(std::move(polys)) {
  if (polys_.size() != graph_.num_nodes()) throw InputError("expected one polynomial per node");
  for (std::size_t n = 0; n < polys_.size(); ++n) {
    auto inc = graph_.incidence_at(n);
    if (polys_[n].node != graph_.nodes()[n].id ||
        !std::equal(inc.begin(), inc.end(), polys_[n].variables.begin(), polys_[n].variables.end())) {
      throw InputError("node polynomial does not match the node's incidence list");
    }
  }
}

FactoredGaugePoly FactoredGaugePoly::from_model(const MultiGM& m) {
  std::vector<NodePoly> polys;
  for (std::size_t n = 0; n < m.graph().num_nodes(); ++n) {
    polys.push_back(node_poly_from_factor(m.graph().nodes()[n].id, m.factor_at(n)));
  }
  return FactoredGaugePoly(m.graph(), std::move(polys));
}

double FactoredGaugePoly::evaluate(const GaugeVector& x) const {
  double h = 1.0;
  for (std::size_t n = 0; n < polys_.size(); ++n) h *= polys_[n].evaluate(x.at_node(graph_, n));
  return h;
}

QuadCoeffs quad_coeffs(const FactoredGaugePoly& h, EdgeId edge, const GaugeVector& x_rest) {
  const MultiGraph& g = h.graph();
  (void)g.edge(edge);
  const DirectedEdgeId plus{edge, Polarity::Plus};
  const DirectedEdgeId minus{edge, Polarity::Minus};

  // c[i][j]: coefficient of x+^i x-^j
  double c[2][2] = {{1.0, 0.0}, {0.0, 0.0}};
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    const NodePoly& p = h.node_polys()[n];
    auto inc = g.incidence_at(n);
    std::vector<double> x(inc.size(), 1.0);
    int pos_plus = -1;
    int pos_minus = -1;
    for (std::size_t i = 0; i < inc.size(); ++i) {
      if (inc[i] == plus) {
        pos_plus = static_cast<int>(i);
      } else if (inc[i] == minus) {
        pos_minus = static_cast<int>(i);
      } else {
        x[i] = x_rest[inc[i]];
      }
    }
    double d[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (const auto& [mask, coeff] : p.coefficients) {
      double term = coeff;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if ((mask >> i) & 1U) term *= x[i];
      }
      const int i_plus = pos_plus >= 0 ? static_cast<int>((mask >> pos_plus) & 1U) : 0;
      const int i_minus = pos_minus >= 0 ? static_cast<int>((mask >> pos_minus) & 1U) : 0;
      d[i_plus][i_minus] += term;
    }
    double next[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int i = 0; i + a < 2; ++i)
          for (int j = 0; j + b < 2; ++j) next[a + i][b + j] += c[a][b] * d[i][j];
    std::copy(&next[0][0], &next[0][0] + 4, &c[0][0]);
  }
  return {c[0][0], c[1][0], c[0][1], c[1][1]};
}

namespace {

std::uint32_t remove_bits(std::uint32_t mask, std::size_t lo, std::size_t hi) {
  // removes bit `hi` then bit `lo` (lo < hi)
  auto remove = [](std::uint32_t m, std::size_t pos) {
    const std::uint32_t low = m & ((1U << pos) - 1);
    return low | ((m >> (pos + 1)) << pos);
  };
  return remove(remove(mask, hi), lo);
}

std::uint32_t remove_bit(std::uint32_t mask, std::size_t pos) {
  const std::uint32_t low = mask & ((1U << pos) - 1);
  return low | ((mask >> (pos + 1)) << pos);
}

void check_cap(std::size_t arity) {
  if (arity > kMaxPolyVariables) {
    throw GuardError("contraction would create a node polynomial with " + std::to_string(arity) +
                     " variables; the limit is " + std::to_string(kMaxPolyVariables) +
                     ", reduce the instance size");
  }
}

}  // namespace

FactoredGaugePoly exact_contract_poly(const FactoredGaugePoly& h, EdgeId edge_id) {
  const MultiGraph& g = h.graph();
  const Edge& edge = g.edge(edge_id);
  MultiGraph contracted = contract_edge(g, edge_id);
  std::vector<NodePoly> polys;

  if (edge.is_self()) {
    const std::size_t n = g.node_index(edge.tail);
    const NodePoly& p = h.node_polys()[n];
    const auto it_plus = std::find(p.variables.begin(), p.variables.end(), DirectedEdgeId{edge_id, Polarity::Plus});
    const auto it_minus = std::find(p.variables.begin(), p.variables.end(), DirectedEdgeId{edge_id, Polarity::Minus});
    const auto pp = static_cast<std::size_t>(it_plus - p.variables.begin());
    const auto pm = static_cast<std::size_t>(it_minus - p.variables.begin());
    const std::size_t lo = std::min(pp, pm);
    const std::size_t hi = std::max(pp, pm);
    const std::uint32_t both = (1U << pp) | (1U << pm);

    // H00 first, then H11, so each merged coefficient is H00[s] + H11[s].
    std::map<std::uint32_t, double> merged;
    for (const auto& [mask, c] : p.coefficients) {
      if ((mask & both) == 0) merged[remove_bits(mask, lo, hi)] = c;
    }
    for (const auto& [mask, c] : p.coefficients) {
      if ((mask & both) == both) merged[remove_bits(mask, lo, hi)] += c;
    }
    std::erase_if(merged, [](const auto& kv) { return kv.second == 0.0; });

    for (std::size_t k = 0; k < g.num_nodes(); ++k) {
      if (k == n) {
        auto inc = contracted.incidence(edge.tail);
        polys.push_back({edge.tail, std::vector<DirectedEdgeId>(inc.begin(), inc.end()), std::move(merged)});
      } else {
        polys.push_back(h.node_polys()[k]);
      }
    }
    return FactoredGaugePoly(std::move(contracted), std::move(polys));
  }

  const NodeId survivor = std::min(edge.tail, edge.head);
  const NodeId absorbed = std::max(edge.tail, edge.head);
  const NodePoly& ps = h.node_poly(survivor);
  const NodePoly& pt = h.node_poly(absorbed);
  const DirectedEdgeId ds{edge_id, survivor == edge.tail ? Polarity::Plus : Polarity::Minus};
  const auto pos_s = static_cast<std::size_t>(
      std::find(ps.variables.begin(), ps.variables.end(), ds) - ps.variables.begin());
  const auto pos_t = static_cast<std::size_t>(
      std::find(pt.variables.begin(), pt.variables.end(), ds.reversed()) - pt.variables.begin());
  const std::size_t ks = ps.variables.size() - 1;
  check_cap(ks + pt.variables.size() - 1);

  // Split each side by the contracted variable: side[0] = H.0, side[1] = H.1.
  auto split = [](const NodePoly& p, std::size_t pos) {
    std::array<std::vector<std::pair<std::uint32_t, double>>, 2> side;
    for (const auto& [mask, c] : p.coefficients) side[(mask >> pos) & 1U].emplace_back(remove_bit(mask, pos), c);
    return side;
  };
  const auto s_side = split(ps, pos_s);
  const auto t_side = split(pt, pos_t);

  std::map<std::uint32_t, double> merged;
  for (int bit = 0; bit < 2; ++bit) {
    for (const auto& [ms, cs] : s_side[bit]) {
      for (const auto& [mt, ct] : t_side[bit]) {
        merged[ms | (mt << ks)] += cs * ct;
      }
    }
  }
  std::erase_if(merged, [](const auto& kv) { return kv.second == 0.0; });

  for (std::size_t k = 0; k < g.num_nodes(); ++k) {
    const NodeId id = g.nodes()[k].id;
    if (id == absorbed) continue;
    if (id == survivor) {
      auto inc = contracted.incidence(survivor);
      polys.push_back({survivor, std::vector<DirectedEdgeId>(inc.begin(), inc.end()), std::move(merged)});
    } else {
      polys.push_back(h.node_polys()[k]);
    }
  }
  return FactoredGaugePoly(std::move(contracted), std::move(polys));
}

double zeta_eval(const FactoredGaugePoly& h, const GaugeVector& x) {
  double value = h.evaluate(x);
  for (const Edge& e : h.graph().edges()) value /= 1.0 + x.product(e.id);
  return value;
}

BistableReport bistable_condition_sample(const FactoredGaugePoly& h, EdgeId edge, std::size_t n_samples,
                                         std::uint64_t seed) {
  (void)h.graph().edge(edge);
  std::mt19937_64 rng(seed);
  BistableReport report;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const GaugeVector x = random_gauge(h.graph(), rng, 1e-2, 1e2);
    const QuadCoeffs c = quad_coeffs(h, edge, x);
    const double cross = c.h01 * c.h10;
    const double diag = c.h00 * c.h11;
    ++report.samples;
    if (cross <= diag * (1.0 + 1e-12)) ++report.passed;
    const double ratio = diag > 0.0 ? cross / diag : (cross > 0.0 ? INFINITY : 0.0);
    report.worst_ratio = std::max(report.worst_ratio, ratio);
  }
  return report;
}

}  // namespace gaugepf
