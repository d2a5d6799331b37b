#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gaugepf {

struct NodeId {
  std::uint32_t value = 0;
  auto operator<=>(const NodeId&) const = default;
};

struct EdgeId {
  std::uint32_t value = 0;
  auto operator<=>(const EdgeId&) const = default;
};

enum class Polarity : std::uint8_t { Plus = 0, Minus = 1 };

/// One orientation of an undirected edge. The tail owns `Plus`, the head
/// owns `Minus`; a self-edge's single node owns both.
struct DirectedEdgeId {
  EdgeId edge;
  Polarity polarity = Polarity::Plus;

  auto operator<=>(const DirectedEdgeId&) const = default;

  [[nodiscard]] DirectedEdgeId reversed() const {
    return {edge, polarity == Polarity::Plus ? Polarity::Minus : Polarity::Plus};
  }
};

struct Node {
  NodeId id;
  std::string name;
};

struct Edge {
  EdgeId id;
  NodeId tail;
  NodeId head;
  std::string name;

  [[nodiscard]] bool is_self() const { return tail == head; }
};

/// Undirected multi-graph with self-edges and parallel edges.
///
/// Node and edge ids are stable labels: contraction removes entries but never
/// renumbers the survivors, so edge ids from the original graph remain valid
/// along an elimination sequence. Nodes and edges are kept sorted by id.
/// Every node carries an ordered incidence list of directed edges; the
/// position of a directed edge in that list is its bit position in the
/// node's factor table.
class MultiGraph {
 public:
  MultiGraph() = default;

  /// Builds the default incidence: edges are visited in id order, the tail
  /// receives `Plus` and the head receives `Minus` (self-edges: both, `Plus`
  /// first).
  MultiGraph(std::vector<Node> nodes, std::vector<Edge> edges);

  /// Uses the given incidence lists (one per node, in the order of `nodes`
  /// after sorting by id). Throws InputError unless every directed edge
  /// appears exactly once, at its owning node.
  MultiGraph(std::vector<Node> nodes, std::vector<Edge> edges,
             std::vector<std::vector<DirectedEdgeId>> incidence);

  /// Convenience constructor with dense ids 0..n-1 and generated names.
  static MultiGraph from_edge_list(std::size_t num_nodes,
                                   std::span<const std::pair<std::uint32_t, std::uint32_t>> endpoints);

  [[nodiscard]] std::span<const Node> nodes() const { return nodes_; }
  [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
  [[nodiscard]] std::size_t num_nodes() const { return nodes_.size(); }
  [[nodiscard]] std::size_t num_edges() const { return edges_.size(); }

  [[nodiscard]] bool has_node(NodeId id) const;
  [[nodiscard]] bool has_edge(EdgeId id) const;
  [[nodiscard]] bool has_directed_edge(DirectedEdgeId d) const { return has_edge(d.edge); }

  /// Position of the node/edge in `nodes()` / `edges()`. Throw LookupError.
  [[nodiscard]] std::size_t node_index(NodeId id) const;
  [[nodiscard]] std::size_t edge_index(EdgeId id) const;

  [[nodiscard]] const Node& node(NodeId id) const { return nodes_[node_index(id)]; }
  [[nodiscard]] const Edge& edge(EdgeId id) const { return edges_[edge_index(id)]; }

  [[nodiscard]] std::span<const DirectedEdgeId> incidence(NodeId id) const {
    return incidence_[node_index(id)];
  }
  [[nodiscard]] std::span<const DirectedEdgeId> incidence_at(std::size_t node_pos) const {
    return incidence_[node_pos];
  }

  /// The node whose incidence list holds `d`.
  [[nodiscard]] NodeId owner(DirectedEdgeId d) const;

  /// Reversal of `d`; throws LookupError for edges not in the graph.
  [[nodiscard]] DirectedEdgeId sibling(DirectedEdgeId d) const;

  [[nodiscard]] std::size_t num_self_edges() const;
  [[nodiscard]] std::size_t num_components() const;
  /// |E| - |V| + (number of connected components).
  [[nodiscard]] std::size_t cycle_rank() const;
  [[nodiscard]] bool is_forest() const { return cycle_rank() == 0; }

  /// Smallest-id normal edge, if any.
  [[nodiscard]] const Edge* first_normal_edge() const;

 private:
  void sort_and_validate();

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<DirectedEdgeId>> incidence_;
};

/// Removes `edge`. A normal edge merges its endpoints into the smaller-id
/// node, whose incidence list becomes its own remaining entries followed by
/// the absorbed node's remaining entries; edges between the two become
/// self-edges of the survivor. A self-edge is simply removed.
[[nodiscard]] MultiGraph contract_edge(const MultiGraph& g, EdgeId edge);

/// Greedy elimination order on the evolving graph: smallest-id normal edge
/// while any exists, otherwise smallest-id self-edge.
[[nodiscard]] std::vector<EdgeId> normal_first_order(const MultiGraph& g);

/// Greedy order that removes self-edges as soon as they appear: smallest-id
/// self-edge while any exists, otherwise smallest-id normal edge. Keeps the
/// merged tables small on dense graphs.
[[nodiscard]] std::vector<EdgeId> self_first_order(const MultiGraph& g);

/// True when `order` is a permutation of the graph's edge ids.
[[nodiscard]] bool is_elimination_order(const MultiGraph& g, std::span<const EdgeId> order);

[[nodiscard]] std::string directed_edge_name(const MultiGraph& g, DirectedEdgeId d);

}  // namespace gaugepf
