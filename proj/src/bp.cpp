#include "gaugepf/bp.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gaugepf/errors.hpp"
#include "internal/bits.hpp"

namespace gaugepf {

namespace {

void validate(const SolverConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) throw InputError("solver tolerance must be positive");
  if (!(cfg.damping >= 0.0 && cfg.damping < 1.0)) throw InputError("damping must lie in [0, 1)");
  if (cfg.restarts == 0) throw InputError("at least one restart is required");
  if (!(cfg.soften_eps > 0.0)) throw InputError("softening epsilon must be positive");
}

// 2x2 coefficients of one node's h_a in the edge's variables: c[i][j] for
// x+^i x-^j, other variables taken from `x`.
void node_pair_coeffs(const MultiGM& m, const GaugeVector& x, std::size_t n, EdgeId edge, double c[2][2]) {
  const MultiGraph& g = m.graph();
  const FactorTable& f = m.factor_at(n);
  auto inc = g.incidence_at(n);
  std::vector<double> xa(inc.size(), 1.0);
  std::size_t mask_plus = 0;
  std::size_t mask_minus = 0;
  for (std::size_t i = 0; i < inc.size(); ++i) {
    if (inc[i].edge == edge) {
      (inc[i].polarity == Polarity::Plus ? mask_plus : mask_minus) = std::size_t{1} << i;
    } else {
      xa[i] = x[inc[i]];
    }
  }
  const auto w = detail::monomial_weights(xa);
  c[0][0] = c[0][1] = c[1][0] = c[1][1] = 0.0;
  for (std::size_t s = 0; s < f.size(); ++s) {
    c[(s & mask_plus) ? 1 : 0][(s & mask_minus) ? 1 : 0] += f[s] * w[s];
  }
}

// Coefficients of the endpoint factors only. The remaining nodes contribute
// a constant factor, which the pair update does not see.
QuadCoeffs local_quad(const MultiGM& m, const GaugeVector& x, const Edge& e) {
  const MultiGraph& g = m.graph();
  double a[2][2];
  node_pair_coeffs(m, x, g.node_index(e.tail), e.id, a);
  if (e.is_self()) return {a[0][0], a[1][0], a[0][1], a[1][1]};
  double b[2][2];
  node_pair_coeffs(m, x, g.node_index(e.head), e.id, b);
  // the tail holds only x+, the head only x-
  return {a[0][0] * b[0][0], a[1][0] * b[0][0], a[0][0] * b[0][1], a[1][0] * b[0][1]};
}

double max_abs(const std::vector<double>& v) {
  double r = 0.0;
  for (double d : v) r = std::max(r, std::abs(d));
  return r;
}

struct Attempt {
  GaugeVector x;
  double residual = 0.0;
  std::size_t sweeps = 0;
  bool converged = false;
};

Attempt run_sweeps(const MultiGM& m, GaugeVector x, const SolverConfig& cfg) {
  Attempt out;
  const auto edges = m.graph().edges();
  out.residual = max_abs(bp_residual(m, x));
  while (out.residual > cfg.tolerance && out.sweeps < cfg.max_sweeps) {
    for (const Edge& e : edges) {
      const EdgePair target = edge_pair_update(local_quad(m, x, e));
      const DirectedEdgeId plus{e.id, Polarity::Plus};
      const DirectedEdgeId minus{e.id, Polarity::Minus};
      x.set(plus, cfg.damping * x[plus] + (1.0 - cfg.damping) * target.plus);
      x.set(minus, cfg.damping * x[minus] + (1.0 - cfg.damping) * target.minus);
    }
    ++out.sweeps;
    out.residual = max_abs(bp_residual(m, x));
    if (!std::isfinite(out.residual)) break;
  }
  out.converged = out.residual <= cfg.tolerance;
  out.x = std::move(x);
  return out;
}

}  // namespace

MultiGM solver_model(const MultiGM& m, const SolverConfig& cfg) {
  return m.soft() ? m : soften(m, cfg.soften_eps);
}

std::vector<double> bp_residual(const MultiGM& m, const GaugeVector& x) {
  if (!m.soft()) throw DegenerateError("BP residual needs a soft model; soften it first");
  const MultiGraph& g = m.graph();
  std::vector<double> r;
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    const FactorTable& f = m.factor_at(n);
    auto inc = g.incidence_at(n);
    const auto w = detail::monomial_weights(x.at_node(g, n));
    std::vector<double> moment(inc.size(), 0.0);
    double h = 0.0;
    for (std::size_t s = 0; s < f.size(); ++s) {
      const double t = f[s] * w[s];
      h += t;
      for (std::size_t i = 0; i < inc.size(); ++i) {
        if ((s >> i) & 1U) moment[i] += t;
      }
    }
    for (std::size_t i = 0; i < inc.size(); ++i) {
      const double p = x.product(inc[i].edge);
      r.push_back(p / (1.0 + p) - moment[i] / h);
    }
  }
  return r;
}

EdgePair edge_pair_update(const QuadCoeffs& c) {
  if (!(c.h10 > 0.0) || !(c.h01 > 0.0)) {
    throw DegenerateError("edge has a vanishing linear coefficient; soften the model (e.g. --soften 1e-12)");
  }
  const double a = c.h11 - c.h00;
  const double cross = c.h01 * c.h10;
  const double root = std::sqrt(a * a + 4.0 * cross);
  // avoid cancellation in a + root when a < 0
  const double num = a >= 0.0 ? a + root : 4.0 * cross / (root - a);
  return {num / (2.0 * c.h10), num / (2.0 * c.h01)};
}

double bp_value(const QuadCoeffs& c) {
  if (!(c.h10 > 0.0) || !(c.h01 > 0.0)) {
    throw DegenerateError("edge has a vanishing linear coefficient; soften the model (e.g. --soften 1e-12)");
  }
  const double a = c.h11 - c.h00;
  return (c.h11 + c.h00 + std::sqrt(a * a + 4.0 * c.h01 * c.h10)) / 2.0;
}

QuadCoeffs edge_quad_coeffs(const MultiGM& m, const GaugeVector& x, EdgeId edge) {
  const MultiGraph& g = m.graph();
  const Edge& e = g.edge(edge);
  QuadCoeffs c = local_quad(m, x, e);
  double rest = 1.0;
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    const NodeId id = g.nodes()[n].id;
    if (id == e.tail || id == e.head) continue;
    rest *= h_node(m.factor_at(n), x.at_node(g, n));
  }
  return {c.h00 * rest, c.h10 * rest, c.h01 * rest, c.h11 * rest};
}

QuadCoeffs soften(const QuadCoeffs& c, double eps) {
  if (!(eps > 0.0)) throw InputError("softening epsilon must be positive");
  const double floor = eps * std::max({c.h00, c.h10, c.h01, c.h11});
  if (!(floor > 0.0)) throw DegenerateError("all coefficients vanish");
  return {std::max(c.h00, floor), std::max(c.h10, floor), std::max(c.h01, floor), std::max(c.h11, floor)};
}

BPGauge solve_bp(const MultiGM& input, const SolverConfig& cfg) {
  validate(cfg);
  const MultiGM m = solver_model(input, cfg);
  std::mt19937_64 rng(cfg.seed);

  BPGauge best;
  best.softened = !input.soft();
  bool have_best = false;
  std::vector<double> values;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    Attempt a = run_sweeps(m, random_gauge(m.graph(), rng, 0.25, 4.0), cfg);
    const double z = gauge_function(m, a.x);
    if (a.converged) {
      ++best.converged_restarts;
      values.push_back(z);
    }
    // converged attempts beat unconverged ones; then larger z, first wins ties
    const bool better = !have_best || (a.converged && !best.converged) ||
                        (a.converged == best.converged &&
                         (a.converged ? z > best.z : a.residual < best.residual));
    if (better) {
      have_best = true;
      best.x = std::move(a.x);
      best.residual = a.residual;
      best.z = z;
      best.sweeps = a.sweeps;
      best.converged = a.converged;
    }
  }
  best.log_z = log_gauge_function(m, best.x);

  std::sort(values.begin(), values.end(), std::greater<>());
  for (double v : values) {
    if (best.stationary_values.empty() ||
        std::abs(best.stationary_values.back() - v) > 1e-8 * std::abs(best.stationary_values.back())) {
      best.stationary_values.push_back(v);
    }
  }
  return best;
}

Beliefs marginals_from_gauge(const MultiGM& m, const GaugeVector& x) {
  const MultiGraph& g = m.graph();
  Beliefs b;
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    const FactorTable& f = m.factor_at(n);
    const auto w = detail::monomial_weights(x.at_node(g, n));
    std::vector<double> t(f.size());
    double h = 0.0;
    for (std::size_t s = 0; s < f.size(); ++s) {
      t[s] = f[s] * w[s];
      h += t[s];
    }
    if (!(h > 0.0)) throw DegenerateError("node '" + g.nodes()[n].name + "' has an all-zero factor");
    for (double& v : t) v /= h;
    b.node.push_back(std::move(t));
  }
  for (const Edge& e : g.edges()) {
    const double p = x.product(e.id);
    b.edge.push_back(p / (1.0 + p));
  }
  return b;
}

double polytope_violation(const MultiGM& m, const Beliefs& b) {
  const MultiGraph& g = m.graph();
  if (b.node.size() != g.num_nodes() || b.edge.size() != g.num_edges()) {
    throw InputError("beliefs do not match the model");
  }
  double worst = 0.0;
  for (double beta : b.edge) {
    if (!(beta >= 0.0 && beta <= 1.0)) return INFINITY;
  }
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    const auto& t = b.node[n];
    if (t.size() != m.factor_at(n).size()) throw InputError("belief table size does not match the factor");
    auto inc = g.incidence_at(n);
    double total = 0.0;
    std::vector<double> on(inc.size(), 0.0);
    for (std::size_t s = 0; s < t.size(); ++s) {
      if (!(t[s] >= 0.0)) return INFINITY;
      total += t[s];
      for (std::size_t i = 0; i < inc.size(); ++i) {
        if ((s >> i) & 1U) on[i] += t[s];
      }
    }
    worst = std::max(worst, std::abs(total - 1.0));
    for (std::size_t i = 0; i < inc.size(); ++i) {
      worst = std::max(worst, std::abs(on[i] - b.edge[g.edge_index(inc[i].edge)]));
    }
  }
  return worst;
}

double interior_margin(const Beliefs& b) {
  double margin = 0.5;
  for (double beta : b.edge) margin = std::min({margin, beta, 1.0 - beta});
  return margin;
}

namespace {

double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

}  // namespace

double bethe_free_energy(const MultiGM& m, const Beliefs& b) {
  const double violation = polytope_violation(m, b);
  if (!(violation <= 1e-9)) {
    throw InputError("beliefs violate the marginal polytope by " + std::to_string(violation));
  }
  double f_value = 0.0;
  for (std::size_t n = 0; n < b.node.size(); ++n) {
    const FactorTable& f = m.factor_at(n);
    for (std::size_t s = 0; s < f.size(); ++s) {
      const double p = b.node[n][s];
      if (p == 0.0) continue;
      if (f[s] == 0.0) return INFINITY;
      f_value += p * (std::log(p) - std::log(f[s]));
    }
  }
  for (double beta : b.edge) f_value -= xlogx(beta) + xlogx(1.0 - beta);
  return f_value;
}

double log_lagrangian_L(const MultiGM& m, std::span<const double> beta, const GaugeVector& x) {
  const MultiGraph& g = m.graph();
  if (beta.size() != g.num_edges()) throw InputError("one belief per edge is required");
  double v = 0.0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    if (!(beta[k] >= 0.0 && beta[k] <= 1.0)) throw InputError("edge beliefs must lie in [0, 1]");
    v += xlogx(beta[k]) + xlogx(1.0 - beta[k]);
    v -= beta[k] * std::log(x.product(g.edges()[k].id));
  }
  for (std::size_t n = 0; n < g.num_nodes(); ++n) v += std::log(h_node(m.factor_at(n), x.at_node(g, n)));
  return v;
}

double lagrangian_L(const MultiGM& m, std::span<const double> beta, const GaugeVector& x) {
  return std::exp(log_lagrangian_L(m, beta, x));
}

SaddleReport saddle_check(const MultiGM& m, const GaugeVector& x_bp, EdgeId edge) {
  const QuadCoeffs c = edge_quad_coeffs(m, x_bp, edge);
  const double p = x_bp[{edge, Polarity::Plus}];
  const double q = x_bp[{edge, Polarity::Minus}];
  auto g = [&](double u, double v) { return (c.h00 + c.h10 * u + c.h01 * v + c.h11 * u * v) / (1.0 + u * v); };
  const double dp = 1e-5 * p;
  const double dq = 1e-5 * q;
  const double g0 = g(p, q);

  SaddleReport r;
  r.d2_plus = (g(p + dp, q) - 2.0 * g0 + g(p - dp, q)) / (dp * dp);
  r.d2_minus = (g(p, q + dq) - 2.0 * g0 + g(p, q - dq)) / (dq * dq);
  r.mixed = (g(p + dp, q + dq) - g(p + dp, q - dq) - g(p - dp, q + dq) + g(p - dp, q - dq)) / (4.0 * dp * dq);
  r.determinant = r.d2_plus * r.d2_minus - r.mixed * r.mixed;
  r.mixed_closed_form = (c.h11 - g0) / (1.0 + p * q);
  return r;
}

bool SequenceReport::all_converged() const {
  return std::all_of(entries.begin(), entries.end(), [](const SequenceEntry& e) { return e.converged; });
}

SequenceReport bp_contract_sequence(const MultiGM& m, std::span<const EdgeId> order, const SolverConfig& cfg,
                                    double slack) {
  if (!is_elimination_order(m.graph(), order)) {
    throw InputError("order is not a permutation of the model's edge ids");
  }
  validate(cfg);
  SequenceReport report;
  report.softened = !m.soft();
  MultiGM stage = solver_model(m, cfg);
  report.z_exact = partition_exact(stage);

  for (std::size_t step = 0; step <= order.size(); ++step) {
    if (step > 0) stage = contract_model(stage, order[step - 1]);
    const BPGauge bp = solve_bp(stage, cfg);
    SequenceEntry entry;
    entry.step = step;
    if (step > 0) entry.eliminated = order[step - 1];
    entry.z_vbp = bp.z;
    entry.converged = bp.converged;
    entry.num_edges = stage.graph().num_edges();
    entry.num_self_edges = stage.graph().num_self_edges();
    entry.model = stage;
    if (step > 0 && entry.z_vbp < report.entries.back().z_vbp * (1.0 - slack)) report.decreases.push_back(step);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

FactoredGaugePoly bp_normal_contract(const FactoredGaugePoly& h, EdgeId edge) {
  if (h.graph().edge(edge).is_self()) {
    throw InputError("BP self-edge contraction is not polynomial; only normal edges reduce exactly");
  }
  return exact_contract_poly(h, edge);
}

}  // namespace gaugepf
