#include "gaugepf/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaugepf/errors.hpp"
#include "internal/bits.hpp"
#include "internal/enumerate.hpp"

namespace gaugepf {

FactorTable::FactorTable(std::vector<DirectedEdgeId> variables, std::vector<double> values)
    : variables_(std::move(variables)), values_(std::move(values)) {
  if (variables_.size() >= 31) {
    throw InputError("factor table over " + std::to_string(variables_.size()) + " variables is too large");
  }
  if (values_.size() != (std::size_t{1} << variables_.size())) {
    throw InputError("factor table has " + std::to_string(values_.size()) + " entries, expected " +
                     std::to_string(std::size_t{1} << variables_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw InputError("factor entries must be finite and nonnegative");
  }
}

bool FactorTable::soft() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v > 0.0; });
}

double FactorTable::max_entry() const { return *std::max_element(values_.begin(), values_.end()); }

int FactorTable::position(DirectedEdgeId d) const {
  auto it = std::find(variables_.begin(), variables_.end(), d);
  return it == variables_.end() ? -1 : static_cast<int>(it - variables_.begin());
}

MultiGM::MultiGM(MultiGraph graph, std::vector<FactorTable> factors)
    : graph_(std::move(graph)), factors_(std::move(factors)) {
  if (factors_.size() != graph_.num_nodes()) {
    throw InputError("expected one factor per node");
  }
  for (std::size_t n = 0; n < factors_.size(); ++n) {
    auto inc = graph_.incidence_at(n);
    auto vars = factors_[n].variables();
    if (!std::equal(inc.begin(), inc.end(), vars.begin(), vars.end())) {
      throw InputError("factor of node " + graph_.nodes()[n].name +
                       " is not laid out over the node's incidence list");
    }
  }
}

bool MultiGM::soft() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const FactorTable& f) { return f.soft(); });
}

FactorTable reorder_table(std::span<const DirectedEdgeId> incidence,
                          std::span<const DirectedEdgeId> order, std::span<const double> values) {
  if (order.size() != incidence.size()) {
    throw InputError("variable order has " + std::to_string(order.size()) + " entries, node has " +
                     std::to_string(incidence.size()) + " incident directed edges");
  }
  // source bit i (order[i]) -> destination bit perm[i]
  std::vector<std::size_t> perm(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto it = std::find(incidence.begin(), incidence.end(), order[i]);
    if (it == incidence.end()) throw InputError("variable order names a directed edge not incident to the node");
    perm[i] = static_cast<std::size_t>(it - incidence.begin());
    for (std::size_t j = 0; j < i; ++j) {
      if (perm[j] == perm[i]) throw InputError("variable order repeats a directed edge");
    }
  }
  if (values.size() != (std::size_t{1} << order.size())) {
    throw InputError("table size does not match variable order");
  }
  std::vector<double> out(values.size());
  for (std::size_t src = 0; src < values.size(); ++src) {
    std::size_t dst = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if ((src >> i) & 1U) dst |= std::size_t{1} << perm[i];
    }
    out[dst] = values[src];
  }
  return FactorTable(std::vector<DirectedEdgeId>(incidence.begin(), incidence.end()), std::move(out));
}

namespace {

void check_guard(const MultiGM& m, std::size_t guard) {
  if (m.graph().num_edges() > guard) {
    throw GuardError("model has " + std::to_string(m.graph().num_edges()) +
                     " edges; exhaustive enumeration is limited to " + std::to_string(guard));
  }
}

// Calls visit(weight, index) for every configuration in ascending order.
template <typename Visit>
void for_each_weight(const MultiGM& m, Visit&& visit) {
  const std::size_t num_nodes = m.graph().num_nodes();
  detail::for_each_config(m.graph(), [&](const std::vector<std::size_t>& local, std::size_t c) {
    double w = 1.0;
    for (std::size_t n = 0; n < num_nodes; ++n) w *= m.factor_at(n)[local[n]];
    visit(w, c);
  });
}

}  // namespace

std::vector<std::size_t> local_configs(const MultiGM& m, std::span<const std::uint8_t> sigma) {
  const MultiGraph& g = m.graph();
  if (sigma.size() != g.num_edges()) {
    throw InputError("configuration has " + std::to_string(sigma.size()) + " bits, model has " +
                     std::to_string(g.num_edges()) + " edges");
  }
  std::vector<std::size_t> local(g.num_nodes(), 0);
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    auto inc = g.incidence_at(n);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      if (sigma[g.edge_index(inc[i].edge)] != 0) local[n] |= std::size_t{1} << i;
    }
  }
  return local;
}

double evaluate_weight(const MultiGM& m, std::span<const std::uint8_t> sigma) {
  const auto local = local_configs(m, sigma);
  double w = 1.0;
  for (std::size_t n = 0; n < local.size(); ++n) w *= m.factor_at(n)[local[n]];
  return w;
}

double partition_exact(const MultiGM& m, std::size_t guard) {
  check_guard(m, guard);
  double z = 0.0;
  for_each_weight(m, [&](double w, std::size_t) { z += w; });
  return z;
}

MapResult map_energy_exact(const MultiGM& m, std::size_t guard) {
  check_guard(m, guard);
  double best = 0.0;
  std::size_t best_index = 0;
  for_each_weight(m, [&](double w, std::size_t c) {
    if (w > best) {
      best = w;
      best_index = c;
    }
  });
  if (best <= 0.0) throw InputError("every configuration has zero weight");
  MapResult result;
  result.energy = -std::log(best);
  result.argmax.resize(m.graph().num_edges());
  for (std::size_t e = 0; e < result.argmax.size(); ++e) {
    result.argmax[e] = static_cast<std::uint8_t>((best_index >> e) & 1U);
  }
  return result;
}

MultiGM soften(const MultiGM& m, double eps) {
  if (!(eps > 0.0)) throw InputError("softening parameter must be positive");
  std::vector<FactorTable> factors;
  for (std::size_t n = 0; n < m.graph().num_nodes(); ++n) {
    const FactorTable& f = m.factor_at(n);
    const double floor = eps * f.max_entry();
    if (!(floor > 0.0)) {
      throw InputError("cannot soften the all-zero table of node " + m.graph().nodes()[n].name);
    }
    std::vector<double> values(f.values().begin(), f.values().end());
    for (double& v : values) v = std::max(v, floor);
    factors.emplace_back(std::vector<DirectedEdgeId>(f.variables().begin(), f.variables().end()),
                         std::move(values));
  }
  return MultiGM(m.graph(), std::move(factors));
}

MultiGM contract_model(const MultiGM& m, EdgeId edge_id) {
  const MultiGraph& g = m.graph();
  const Edge& edge = g.edge(edge_id);
  MultiGraph contracted = contract_edge(g, edge_id);

  std::vector<FactorTable> factors;
  if (edge.is_self()) {
    const std::size_t n = g.node_index(edge.tail);
    const FactorTable& f = m.factor_at(n);
    const auto p_plus = static_cast<std::size_t>(f.position({edge_id, Polarity::Plus}));
    const auto p_minus = static_cast<std::size_t>(f.position({edge_id, Polarity::Minus}));
    const std::size_t lo = std::min(p_plus, p_minus);
    const std::size_t hi = std::max(p_plus, p_minus);
    const std::size_t rest = f.arity() - 2;
    std::vector<double> values(std::size_t{1} << rest);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::size_t off = detail::insert_bit(detail::insert_bit(i, lo, 0), hi, 0);
      const std::size_t on = detail::insert_bit(detail::insert_bit(i, lo, 1), hi, 1);
      values[i] = f[off] + f[on];
    }
    for (std::size_t k = 0; k < g.num_nodes(); ++k) {
      if (k == n) {
        auto inc = contracted.incidence(edge.tail);
        factors.emplace_back(std::vector<DirectedEdgeId>(inc.begin(), inc.end()), std::move(values));
      } else {
        factors.push_back(m.factor_at(k));
      }
    }
    return MultiGM(std::move(contracted), std::move(factors));
  }

  const NodeId survivor = std::min(edge.tail, edge.head);
  const NodeId absorbed = std::max(edge.tail, edge.head);
  const FactorTable& fs = m.factor(survivor);
  const FactorTable& ft = m.factor(absorbed);
  const DirectedEdgeId ds{edge_id, survivor == edge.tail ? Polarity::Plus : Polarity::Minus};
  const auto ps = static_cast<std::size_t>(fs.position(ds));
  const auto pt = static_cast<std::size_t>(ft.position(ds.reversed()));
  const std::size_t ks = fs.arity() - 1;
  const std::size_t kt = ft.arity() - 1;
  std::vector<double> values(std::size_t{1} << (ks + kt));
  const std::size_t low_mask = (std::size_t{1} << ks) - 1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t is = i & low_mask;
    const std::size_t it = i >> ks;
    values[i] = fs[detail::insert_bit(is, ps, 0)] * ft[detail::insert_bit(it, pt, 0)] +
                fs[detail::insert_bit(is, ps, 1)] * ft[detail::insert_bit(it, pt, 1)];
  }
  for (std::size_t k = 0; k < g.num_nodes(); ++k) {
    const NodeId id = g.nodes()[k].id;
    if (id == absorbed) continue;
    if (id == survivor) {
      auto inc = contracted.incidence(survivor);
      factors.emplace_back(std::vector<DirectedEdgeId>(inc.begin(), inc.end()), std::move(values));
    } else {
      factors.push_back(m.factor_at(k));
    }
  }
  return MultiGM(std::move(contracted), std::move(factors));
}

}  // namespace gaugepf
