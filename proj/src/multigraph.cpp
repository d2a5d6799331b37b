#include "gaugepf/multigraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gaugepf/errors.hpp"

namespace gaugepf {

namespace {

std::vector<std::vector<DirectedEdgeId>> default_incidence(std::span<const Node> nodes,
                                                           std::span<const Edge> edges) {
  std::vector<std::vector<DirectedEdgeId>> incidence(nodes.size());
  auto index_of = [&](NodeId id) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                               [](const Node& n, NodeId v) { return n.id < v; });
    if (it == nodes.end() || it->id != id) {
      throw InputError("edge endpoint " + std::to_string(id.value) + " is not a node");
    }
    return static_cast<std::size_t>(it - nodes.begin());
  };
  for (const Edge& e : edges) {
    incidence[index_of(e.tail)].push_back({e.id, Polarity::Plus});
    incidence[index_of(e.head)].push_back({e.id, Polarity::Minus});
  }
  return incidence;
}

}  // namespace

MultiGraph::MultiGraph(std::vector<Node> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  std::sort(nodes_.begin(), nodes_.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  incidence_ = default_incidence(nodes_, edges_);
  sort_and_validate();
}

MultiGraph::MultiGraph(std::vector<Node> nodes, std::vector<Edge> edges,
                       std::vector<std::vector<DirectedEdgeId>> incidence)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), incidence_(std::move(incidence)) {
  if (incidence_.size() != nodes_.size()) {
    throw InputError("incidence list count does not match node count");
  }
  // Keep incidence aligned with nodes while sorting by id.
  std::vector<std::size_t> perm(nodes_.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return nodes_[a].id < nodes_[b].id; });
  std::vector<Node> sorted_nodes;
  std::vector<std::vector<DirectedEdgeId>> sorted_incidence;
  for (std::size_t p : perm) {
    sorted_nodes.push_back(std::move(nodes_[p]));
    sorted_incidence.push_back(std::move(incidence_[p]));
  }
  nodes_ = std::move(sorted_nodes);
  incidence_ = std::move(sorted_incidence);
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  sort_and_validate();
}

void MultiGraph::sort_and_validate() {
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (nodes_[i].id == nodes_[i - 1].id) {
      throw InputError("duplicate node id " + std::to_string(nodes_[i].id.value));
    }
  }
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].id == edges_[i - 1].id) {
      throw InputError("duplicate edge id " + std::to_string(edges_[i].id.value));
    }
  }
  std::set<DirectedEdgeId> seen;
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    for (const DirectedEdgeId& d : incidence_[n]) {
      if (!has_edge(d.edge)) {
        throw InputError("incidence of node " + nodes_[n].name + " names an unknown edge");
      }
      const Edge& e = edges_[edge_index(d.edge)];
      const NodeId expected = d.polarity == Polarity::Plus ? e.tail : e.head;
      if (expected != nodes_[n].id) {
        throw InputError("directed edge " + directed_edge_name(*this, d) +
                         " listed at a node that does not own it");
      }
      if (!seen.insert(d).second) {
        throw InputError("directed edge " + directed_edge_name(*this, d) + " listed twice");
      }
    }
  }
  if (seen.size() != 2 * edges_.size()) {
    throw InputError("incidence lists do not cover every directed edge");
  }
}

MultiGraph MultiGraph::from_edge_list(
    std::size_t num_nodes, std::span<const std::pair<std::uint32_t, std::uint32_t>> endpoints) {
  std::vector<Node> nodes;
  for (std::uint32_t i = 0; i < num_nodes; ++i) nodes.push_back({NodeId{i}, "v" + std::to_string(i)});
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < endpoints.size(); ++i) {
    edges.push_back({EdgeId{i}, NodeId{endpoints[i].first}, NodeId{endpoints[i].second},
                     "e" + std::to_string(i)});
  }
  return MultiGraph(std::move(nodes), std::move(edges));
}

bool MultiGraph::has_node(NodeId id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const Node& n, NodeId v) { return n.id < v; });
  return it != nodes_.end() && it->id == id;
}

bool MultiGraph::has_edge(EdgeId id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, EdgeId v) { return e.id < v; });
  return it != edges_.end() && it->id == id;
}

std::size_t MultiGraph::node_index(NodeId id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const Node& n, NodeId v) { return n.id < v; });
  if (it == nodes_.end() || it->id != id) {
    throw LookupError("unknown node id " + std::to_string(id.value));
  }
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t MultiGraph::edge_index(EdgeId id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, EdgeId v) { return e.id < v; });
  if (it == edges_.end() || it->id != id) {
    throw LookupError("unknown edge id " + std::to_string(id.value));
  }
  return static_cast<std::size_t>(it - edges_.begin());
}

NodeId MultiGraph::owner(DirectedEdgeId d) const {
  const Edge& e = edge(d.edge);
  return d.polarity == Polarity::Plus ? e.tail : e.head;
}

DirectedEdgeId MultiGraph::sibling(DirectedEdgeId d) const {
  if (!has_edge(d.edge)) {
    throw LookupError("unknown directed edge on edge id " + std::to_string(d.edge.value));
  }
  return d.reversed();
}

std::size_t MultiGraph::num_self_edges() const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_self(); }));
}

std::size_t MultiGraph::num_components() const {
  std::vector<std::size_t> parent(nodes_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = nodes_.size();
  for (const Edge& e : edges_) {
    std::size_t a = find(node_index(e.tail));
    std::size_t b = find(node_index(e.head));
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      --components;
    }
  }
  return components;
}

std::size_t MultiGraph::cycle_rank() const {
  return edges_.size() + num_components() - nodes_.size();
}

const Edge* MultiGraph::first_normal_edge() const {
  auto it = std::find_if(edges_.begin(), edges_.end(), [](const Edge& e) { return !e.is_self(); });
  return it == edges_.end() ? nullptr : &*it;
}

MultiGraph contract_edge(const MultiGraph& g, EdgeId edge_id) {
  const Edge contracted = g.edge(edge_id);
  std::vector<Node> nodes(g.nodes().begin(), g.nodes().end());
  std::vector<Edge> edges;
  std::vector<std::vector<DirectedEdgeId>> incidence(g.num_nodes());
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    for (const DirectedEdgeId& d : g.incidence_at(n)) {
      if (d.edge != edge_id) incidence[n].push_back(d);
    }
  }

  if (contracted.is_self()) {
    for (const Edge& e : g.edges()) {
      if (e.id != edge_id) edges.push_back(e);
    }
    return MultiGraph(std::move(nodes), std::move(edges), std::move(incidence));
  }

  const NodeId survivor = std::min(contracted.tail, contracted.head);
  const NodeId absorbed = std::max(contracted.tail, contracted.head);
  for (Edge e : g.edges()) {
    if (e.id == edge_id) continue;
    if (e.tail == absorbed) e.tail = survivor;
    if (e.head == absorbed) e.head = survivor;
    edges.push_back(std::move(e));
  }
  const std::size_t s = g.node_index(survivor);
  const std::size_t a = g.node_index(absorbed);
  incidence[s].insert(incidence[s].end(), incidence[a].begin(), incidence[a].end());
  nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(a));
  incidence.erase(incidence.begin() + static_cast<std::ptrdiff_t>(a));
  return MultiGraph(std::move(nodes), std::move(edges), std::move(incidence));
}

std::vector<EdgeId> normal_first_order(const MultiGraph& g) {
  std::vector<EdgeId> order;
  MultiGraph current = g;
  while (current.num_edges() > 0) {
    const Edge* normal = current.first_normal_edge();
    const EdgeId next = normal != nullptr ? normal->id : current.edges().front().id;
    order.push_back(next);
    current = contract_edge(current, next);
  }
  return order;
}

std::vector<EdgeId> self_first_order(const MultiGraph& g) {
  std::vector<EdgeId> order;
  MultiGraph current = g;
  while (current.num_edges() > 0) {
    auto edges = current.edges();
    auto self = std::find_if(edges.begin(), edges.end(), [](const Edge& e) { return e.is_self(); });
    const EdgeId next = self != edges.end() ? self->id : edges.front().id;
    order.push_back(next);
    current = contract_edge(current, next);
  }
  return order;
}

bool is_elimination_order(const MultiGraph& g, std::span<const EdgeId> order) {
  if (order.size() != g.num_edges()) return false;
  std::vector<EdgeId> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != g.edges()[i].id) return false;
  }
  return true;
}

std::string directed_edge_name(const MultiGraph& g, DirectedEdgeId d) {
  std::string base = g.has_edge(d.edge) ? g.edge(d.edge).name : "#" + std::to_string(d.edge.value);
  return base + (d.polarity == Polarity::Plus ? "+" : "-");
}

}  // namespace gaugepf
