#include "gaugepf/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaugepf/errors.hpp"
#include "internal/bits.hpp"
#include "internal/enumerate.hpp"

namespace gaugepf {

GaugeVector::GaugeVector(std::vector<EdgeId> edges, std::vector<double> values)
    : edges_(std::move(edges)), values_(std::move(values)) {
  if (values_.size() != 2 * edges_.size()) {
    throw InputError("gauge vector needs two values per edge");
  }
  if (!std::is_sorted(edges_.begin(), edges_.end()) ||
      std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw InputError("gauge vector edges must be strictly increasing");
  }
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("gauge values must be positive and finite");
  }
}

GaugeVector GaugeVector::constant(const MultiGraph& g, double value) {
  std::vector<EdgeId> edges;
  for (const Edge& e : g.edges()) edges.push_back(e.id);
  return GaugeVector(std::move(edges), std::vector<double>(2 * g.num_edges(), value));
}

bool GaugeVector::contains(EdgeId e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

std::size_t GaugeVector::slot(DirectedEdgeId d) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), d.edge);
  if (it == edges_.end() || *it != d.edge) {
    throw LookupError("gauge vector has no value for edge id " + std::to_string(d.edge.value));
  }
  return 2 * static_cast<std::size_t>(it - edges_.begin()) + (d.polarity == Polarity::Minus ? 1 : 0);
}

void GaugeVector::set(DirectedEdgeId d, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw InputError("gauge values must be positive and finite");
  values_[slot(d)] = value;
}

std::vector<double> GaugeVector::at_node(const MultiGraph& g, std::size_t node_pos) const {
  auto inc = g.incidence_at(node_pos);
  std::vector<double> out;
  out.reserve(inc.size());
  for (const DirectedEdgeId& d : inc) out.push_back((*this)[d]);
  return out;
}

double GaugeVector::product(EdgeId e) const {
  const std::size_t s = slot({e, Polarity::Plus});
  return values_[s] * values_[s + 1];
}

GaugeMatrix gauge_matrix(double x_self, double x_sibling) {
  if (!(x_self >= kMinGauge) || !(x_sibling >= kMinGauge) || !std::isfinite(x_self) ||
      !std::isfinite(x_sibling)) {
    throw InputError("gauge matrix needs finite values >= 1e-12");
  }
  const double scale = 1.0 / (std::pow(x_self * x_sibling, 0.25) * std::sqrt(1.0 + x_self * x_sibling));
  const double rs = std::sqrt(x_self);
  const double rb = std::sqrt(x_sibling);
  return {{{scale * rb, scale * x_self * rb}, {-scale * x_sibling * rs, scale * rs}}};
}

GaugedModel transform_factors(const MultiGM& m, const GaugeVector& x) {
  GaugedModel out{m.graph(), {}};
  const MultiGraph& g = m.graph();
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    const FactorTable& f = m.factor_at(n);
    std::vector<double> t(f.values().begin(), f.values().end());
    auto inc = g.incidence_at(n);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      const GaugeMatrix G = gauge_matrix(x[inc[i]], x[inc[i].reversed()]);
      const std::size_t bit = std::size_t{1} << i;
      for (std::size_t j = 0; j < t.size(); ++j) {
        if (j & bit) continue;
        const double a = t[j];
        const double b = t[j | bit];
        t[j] = G[0][0] * a + G[0][1] * b;
        t[j | bit] = G[1][0] * a + G[1][1] * b;
      }
    }
    out.tables.push_back(std::move(t));
  }
  return out;
}

double gauged_term(const GaugedModel& gm, std::span<const std::uint8_t> sigma) {
  const MultiGraph& g = gm.graph;
  if (sigma.size() != g.num_edges()) throw InputError("configuration size does not match edge count");
  double w = 1.0;
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    auto inc = g.incidence_at(n);
    std::size_t local = 0;
    for (std::size_t i = 0; i < inc.size(); ++i) {
      if (sigma[g.edge_index(inc[i].edge)] != 0) local |= std::size_t{1} << i;
    }
    w *= gm.tables[n][local];
  }
  return w;
}

double gauged_sum(const GaugedModel& gm, std::size_t guard) {
  if (gm.graph.num_edges() > guard) throw GuardError("gauged sum exceeds the enumeration guard");
  double z = 0.0;
  const std::size_t num_nodes = gm.graph.num_nodes();
  detail::for_each_config(gm.graph, [&](const std::vector<std::size_t>& local, std::size_t) {
    double w = 1.0;
    for (std::size_t n = 0; n < num_nodes; ++n) w *= gm.tables[n][local[n]];
    z += w;
  });
  return z;
}

double h_node(const FactorTable& f, std::span<const double> x_a) {
  if (x_a.size() != f.arity()) throw InputError("gauge values do not match the factor arity");
  const auto w = detail::monomial_weights(x_a);
  double h = 0.0;
  for (std::size_t s = 0; s < f.size(); ++s) h += f[s] * w[s];
  return h;
}

double h_node(const MultiGM& m, NodeId a, const GaugeVector& x) {
  const std::size_t n = m.graph().node_index(a);
  return h_node(m.factor_at(n), x.at_node(m.graph(), n));
}

double gauge_function(const MultiGM& m, const GaugeVector& x) {
  const MultiGraph& g = m.graph();
  double z = 1.0;
  for (std::size_t n = 0; n < g.num_nodes(); ++n) z *= h_node(m.factor_at(n), x.at_node(g, n));
  for (const Edge& e : g.edges()) z /= 1.0 + x.product(e.id);
  return z;
}

double log_gauge_function(const MultiGM& m, const GaugeVector& x) {
  const MultiGraph& g = m.graph();
  double lz = 0.0;
  for (std::size_t n = 0; n < g.num_nodes(); ++n) lz += std::log(h_node(m.factor_at(n), x.at_node(g, n)));
  for (const Edge& e : g.edges()) lz -= std::log1p(x.product(e.id));
  return lz;
}

namespace {

double q_node_at(const MultiGM& m, const GaugeVector& x, std::size_t n, std::uint32_t sigma_a) {
  const MultiGraph& g = m.graph();
  const FactorTable& f = m.factor_at(n);
  auto inc = g.incidence_at(n);
  const std::vector<double> xa = x.at_node(g, n);
  const auto w = detail::monomial_weights(xa);

  std::vector<std::size_t> colored;
  std::vector<double> beta;
  double prefactor = 1.0;
  for (std::size_t i = 0; i < inc.size(); ++i) {
    if (((sigma_a >> i) & 1U) == 0) continue;
    const double p = x.product(inc[i].edge);
    colored.push_back(i);
    beta.push_back(p / (1.0 + p));
    prefactor *= (1.0 + p) / p;
  }
  double sum = 0.0;
  for (std::size_t s = 0; s < f.size(); ++s) {
    double term = f[s] * w[s];
    for (std::size_t c = 0; c < colored.size(); ++c) {
      term *= static_cast<double>((s >> colored[c]) & 1U) - beta[c];
    }
    sum += term;
  }
  return prefactor * sum;
}

}  // namespace

double q_node(const MultiGM& m, const GaugeVector& x, NodeId a, std::uint32_t sigma_a) {
  const std::size_t n = m.graph().node_index(a);
  if (m.factor_at(n).arity() < 32 && (sigma_a >> m.factor_at(n).arity()) != 0) {
    throw InputError("coloring mask has bits beyond the node's incidence list");
  }
  return q_node_at(m, x, n, sigma_a);
}

double z_sigma(const MultiGM& m, const GaugeVector& x, std::span<const std::uint8_t> sigma) {
  const MultiGraph& g = m.graph();
  const auto local = local_configs(m, sigma);
  double z = 1.0;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const double p = x.product(g.edges()[e].id);
    z *= (sigma[e] != 0 ? p : 1.0) / (1.0 + p);
  }
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    z *= q_node_at(m, x, n, static_cast<std::uint32_t>(local[n]));
  }
  return z;
}

}  // namespace gaugepf
