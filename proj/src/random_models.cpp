#include "gaugepf/random_models.hpp"

#include <cmath>
#include <string>

#include "gaugepf/errors.hpp"

namespace gaugepf {

MultiGM random_factors(const MultiGraph& g, std::mt19937_64& rng, double entry_lo, double entry_hi) {
  if (!(entry_lo > 0.0) || !(entry_hi >= entry_lo)) throw InputError("entry range must be positive and ordered");
  std::uniform_real_distribution<double> u(std::log(entry_lo), std::log(entry_hi));
  std::vector<FactorTable> factors;
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    auto inc = g.incidence_at(n);
    std::vector<double> values(std::size_t{1} << inc.size());
    for (double& v : values) v = std::exp(u(rng));
    factors.emplace_back(std::vector<DirectedEdgeId>(inc.begin(), inc.end()), std::move(values));
  }
  return MultiGM(g, std::move(factors));
}

MultiGM random_soft_model(std::mt19937_64& rng, const RandomModelOptions& opts) {
  if (opts.max_degree < 2) throw InputError("max degree must be at least 2");
  const std::size_t lo = std::max<std::size_t>(1, (opts.num_edges + 1) / 2);
  std::uniform_int_distribution<std::size_t> node_count(lo, opts.num_edges + 1);
  const std::size_t n = node_count(rng);
  if (2 * opts.num_edges > n * opts.max_degree) throw InputError("too many edges for the degree cap");

  std::vector<std::size_t> degree(n, 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> endpoints;
  std::bernoulli_distribution self_edge(n == 1 ? 1.0 : opts.self_edge_probability);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
  while (endpoints.size() < opts.num_edges) {
    const std::uint32_t a = pick(rng);
    const std::uint32_t b = self_edge(rng) ? a : pick(rng);
    // a self-edge and a normal edge both add two slots; only the owners differ
    if (a == b ? degree[a] + 2 > opts.max_degree
               : degree[a] + 1 > opts.max_degree || degree[b] + 1 > opts.max_degree) {
      continue;
    }
    ++degree[a];
    ++degree[b];
    endpoints.emplace_back(a, b);
  }
  return random_factors(MultiGraph::from_edge_list(n, endpoints), rng, opts.entry_lo, opts.entry_hi);
}

MultiGM random_tree_model(std::mt19937_64& rng, std::size_t num_edges, double entry_lo, double entry_hi) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> endpoints;
  std::bernoulli_distribution flip(0.5);
  for (std::uint32_t v = 1; v <= num_edges; ++v) {
    const std::uint32_t parent = std::uniform_int_distribution<std::uint32_t>(0, v - 1)(rng);
    if (flip(rng)) {
      endpoints.emplace_back(parent, v);
    } else {
      endpoints.emplace_back(v, parent);
    }
  }
  return random_factors(MultiGraph::from_edge_list(num_edges + 1, endpoints), rng, entry_lo, entry_hi);
}

MultiGM matching_model(std::size_t rows, std::size_t cols,
                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                       const std::vector<double>& weights, MatchingKind kind) {
  if (weights.size() != edges.size()) throw InputError("one weight per edge is required");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> endpoints;
  for (const auto& [i, j] : edges) {
    if (i >= rows || j >= cols) throw InputError("matching edge out of range");
    endpoints.emplace_back(i, static_cast<std::uint32_t>(rows + j));
  }
  const MultiGraph g = MultiGraph::from_edge_list(rows + cols, endpoints);
  const double empty = kind == MatchingKind::Perfect ? 0.0 : 1.0;
  std::vector<FactorTable> factors;
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    auto inc = g.incidence_at(n);
    std::vector<double> values(std::size_t{1} << inc.size(), 0.0);
    values[0] = empty;
    for (std::size_t i = 0; i < inc.size(); ++i) {
      values[std::size_t{1} << i] = n < rows ? weights[g.edge_index(inc[i].edge)] : 1.0;
    }
    factors.emplace_back(std::vector<DirectedEdgeId>(inc.begin(), inc.end()), std::move(values));
  }
  return MultiGM(g, std::move(factors));
}

MultiGM permanent_model(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<double> weights;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw InputError("permanent matrix must be square");
    for (std::uint32_t j = 0; j < n; ++j) {
      edges.emplace_back(i, j);
      weights.push_back(a[i][j]);
    }
  }
  return matching_model(n, n, edges, weights, MatchingKind::Perfect);
}

MultiGM two_node_model(double fa0, double fa1, double fb0, double fb1) {
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> endpoints{{0, 1}};
  MultiGraph g = MultiGraph::from_edge_list(2, endpoints);
  const DirectedEdgeId plus{EdgeId{0}, Polarity::Plus};
  return MultiGM(std::move(g), {FactorTable({plus}, {fa0, fa1}), FactorTable({plus.reversed()}, {fb0, fb1})});
}

MultiGM bouquet_model(const std::vector<double>& table) {
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> endpoints{{0, 0}};
  MultiGraph g = MultiGraph::from_edge_list(1, endpoints);
  const DirectedEdgeId plus{EdgeId{0}, Polarity::Plus};
  return MultiGM(std::move(g), {FactorTable({plus, plus.reversed()}, table)});
}

MultiGM triangle_model(double value) {
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> endpoints{{0, 1}, {1, 2}, {2, 0}};
  MultiGraph g = MultiGraph::from_edge_list(3, endpoints);
  std::vector<FactorTable> factors;
  for (std::size_t n = 0; n < 3; ++n) {
    auto inc = g.incidence_at(n);
    factors.emplace_back(std::vector<DirectedEdgeId>(inc.begin(), inc.end()), std::vector<double>(4, value));
  }
  return MultiGM(std::move(g), std::move(factors));
}

}  // namespace gaugepf
