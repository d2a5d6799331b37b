#include "gaugepf/loops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaugepf/bp.hpp"
#include "gaugepf/errors.hpp"
#include "internal/bits.hpp"

namespace gaugepf {

namespace {

struct LoopSearch {
  // endpoints[k]: node positions of edge k (the same node twice for a self-edge)
  std::vector<std::pair<std::size_t, std::size_t>> endpoints;
  // closing[k]: nodes whose last incident edge is k
  std::vector<std::vector<std::size_t>> closing;
  std::vector<int> degree;
  Config current;
  std::vector<GeneralizedLoop> found;

  void visit(std::size_t k) {
    if (k == endpoints.size()) {
      found.push_back(current);
      return;
    }
    for (std::uint8_t bit : {std::uint8_t{0}, std::uint8_t{1}}) {
      current[k] = bit;
      degree[endpoints[k].first] += bit;
      degree[endpoints[k].second] += bit;
      if (std::none_of(closing[k].begin(), closing[k].end(), [&](std::size_t n) { return degree[n] == 1; })) {
        visit(k + 1);
      }
      degree[endpoints[k].first] -= bit;
      degree[endpoints[k].second] -= bit;
    }
    current[k] = 0;
  }
};

std::size_t loop_mask(const GeneralizedLoop& loop) {
  std::size_t mask = 0;
  for (std::size_t k = 0; k < loop.size(); ++k) {
    if (loop[k]) mask |= std::size_t{1} << k;
  }
  return mask;
}

void require_bp_gauge(const MultiGM& m, const GaugeVector& x) {
  const auto r = bp_residual(m, x);
  double worst = 0.0;
  for (double v : r) worst = std::max(worst, std::abs(v));
  if (!(worst <= kLoopGaugeTolerance)) {
    throw ConvergenceError("loop terms need a converged BP gauge; residual is " + std::to_string(worst));
  }
}

double loop_term_unchecked(const MultiGM& m, const GaugeVector& x, std::span<const std::uint8_t> loop, double z) {
  const MultiGraph& g = m.graph();
  if (loop.size() != g.num_edges()) throw InputError("loop size does not match edge count");
  const auto local = local_configs(m, loop);
  double term = z;
  for (std::size_t k = 0; k < g.num_edges(); ++k) {
    if (!loop[k]) continue;
    const double p = x.product(g.edges()[k].id);
    const double beta = p / (1.0 + p);
    term /= beta * (1.0 - beta);
  }
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    const std::size_t colored = local[n];
    if (colored == 0) continue;
    const FactorTable& f = m.factor_at(n);
    auto inc = g.incidence_at(n);
    const auto w = detail::monomial_weights(x.at_node(g, n));
    std::vector<double> beta(inc.size());
    for (std::size_t i = 0; i < inc.size(); ++i) {
      const double p = x.product(inc[i].edge);
      beta[i] = p / (1.0 + p);
    }
    double num = 0.0;
    double h = 0.0;
    for (std::size_t s = 0; s < f.size(); ++s) {
      const double t = f[s] * w[s];
      h += t;
      double c = t;
      for (std::size_t i = 0; i < inc.size(); ++i) {
        if ((colored >> i) & 1U) c *= static_cast<double>((s >> i) & 1U) - beta[i];
      }
      num += c;
    }
    term *= num / h;
  }
  return term;
}

}  // namespace

std::vector<GeneralizedLoop> enumerate_generalized_loops(const MultiGraph& g, std::size_t guard) {
  if (g.num_edges() > guard) {
    throw GuardError("loop enumeration over " + std::to_string(g.num_edges()) + " edges exceeds the guard of " +
                     std::to_string(guard));
  }
  LoopSearch search;
  search.closing.resize(g.num_edges());
  std::vector<std::size_t> last(g.num_nodes(), 0);
  std::vector<bool> touched(g.num_nodes(), false);
  for (std::size_t k = 0; k < g.num_edges(); ++k) {
    const Edge& e = g.edges()[k];
    const std::size_t a = g.node_index(e.tail);
    const std::size_t b = g.node_index(e.head);
    search.endpoints.emplace_back(a, b);
    last[a] = last[b] = k;
    touched[a] = touched[b] = true;
  }
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    if (touched[n]) search.closing[last[n]].push_back(n);
  }
  search.degree.assign(g.num_nodes(), 0);
  search.current.assign(g.num_edges(), 0);
  search.visit(0);
  std::sort(search.found.begin(), search.found.end(),
            [](const GeneralizedLoop& a, const GeneralizedLoop& b) { return loop_mask(a) < loop_mask(b); });
  return search.found;
}

double loop_term(const MultiGM& m, const GaugeVector& x_bp, std::span<const std::uint8_t> loop) {
  require_bp_gauge(m, x_bp);
  return loop_term_unchecked(m, x_bp, loop, gauge_function(m, x_bp));
}

std::vector<LoopTerm> loop_series(const MultiGM& m, const GaugeVector& x_bp) {
  require_bp_gauge(m, x_bp);
  const double z = gauge_function(m, x_bp);
  std::vector<LoopTerm> out;
  for (GeneralizedLoop& loop : enumerate_generalized_loops(m.graph())) {
    const double t = loop_term_unchecked(m, x_bp, loop, z);
    out.push_back({std::move(loop), t});
  }
  return out;
}

double loop_series_sum(const MultiGM& m, const GaugeVector& x_bp) {
  double sum = 0.0;
  for (const LoopTerm& t : loop_series(m, x_bp)) sum += t.term;
  return sum;
}

}  // namespace gaugepf
