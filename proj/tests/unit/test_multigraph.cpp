#include <utility>
#include <vector>

#include "doctest.h"
#include "gaugepf/errors.hpp"
#include "gaugepf/multigraph.hpp"

using namespace gaugepf;

namespace {

using Endpoints = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

DirectedEdgeId plus(std::uint32_t e) { return {EdgeId{e}, Polarity::Plus}; }
DirectedEdgeId minus(std::uint32_t e) { return {EdgeId{e}, Polarity::Minus}; }

MultiGraph graph(std::size_t n, const Endpoints& ends) { return MultiGraph::from_edge_list(n, ends); }

}  // namespace

TEST_SUITE("multigraph") {
  TEST_CASE("default incidence gives the tail plus and the head minus") {
    const MultiGraph g = graph(3, {{0, 1}, {1, 2}, {2, 2}});
    CHECK(std::vector<DirectedEdgeId>(g.incidence(NodeId{0}).begin(), g.incidence(NodeId{0}).end()) ==
          std::vector<DirectedEdgeId>{plus(0)});
    CHECK(std::vector<DirectedEdgeId>(g.incidence(NodeId{1}).begin(), g.incidence(NodeId{1}).end()) ==
          std::vector<DirectedEdgeId>{minus(0), plus(1)});
    CHECK(std::vector<DirectedEdgeId>(g.incidence(NodeId{2}).begin(), g.incidence(NodeId{2}).end()) ==
          std::vector<DirectedEdgeId>{minus(1), plus(2), minus(2)});
    CHECK(g.owner(minus(1)) == NodeId{2});
    CHECK(g.sibling(plus(2)) == minus(2));
    CHECK(g.num_self_edges() == 1);
  }

  TEST_CASE("unknown ids are lookup errors") {
    const MultiGraph g = graph(2, {{0, 1}});
    CHECK_THROWS_AS((void)g.node_index(NodeId{5}), LookupError);
    CHECK_THROWS_AS((void)g.edge(EdgeId{3}), LookupError);
    CHECK_THROWS_AS((void)g.sibling(plus(9)), LookupError);
    CHECK_THROWS_AS((void)contract_edge(g, EdgeId{2}), LookupError);
  }

  TEST_CASE("endpoints must exist and incidence must be consistent") {
    CHECK_THROWS_AS(graph(1, {{0, 1}}), InputError);
    std::vector<Node> nodes{{NodeId{0}, "a"}, {NodeId{1}, "b"}};
    std::vector<Edge> edges{{EdgeId{0}, NodeId{0}, NodeId{1}, "e"}};
    CHECK_THROWS_AS(MultiGraph(nodes, edges, {{minus(0)}, {plus(0)}}), InputError);
    CHECK_THROWS_AS(MultiGraph(nodes, edges, {{plus(0)}, {}}), InputError);
    CHECK_NOTHROW(MultiGraph(nodes, edges, {{plus(0)}, {minus(0)}}));
  }

  TEST_CASE("contracting a normal edge merges into the smaller id") {
    // 0 -e0- 1 with a parallel edge e1 and a pendant edge e2 at node 1
    const MultiGraph g = graph(3, {{0, 1}, {1, 0}, {1, 2}});
    const MultiGraph c = contract_edge(g, EdgeId{0});
    REQUIRE(c.num_nodes() == 2);
    CHECK(c.nodes()[0].id == NodeId{0});
    CHECK(c.nodes()[1].id == NodeId{2});
    CHECK(c.num_edges() == 2);
    CHECK(c.edge(EdgeId{1}).is_self());
    CHECK(c.edge(EdgeId{2}).tail == NodeId{0});
    // survivor's remaining entries, then the absorbed node's remaining entries
    const std::vector<DirectedEdgeId> expected{minus(1), plus(1), plus(2)};
    CHECK(std::vector<DirectedEdgeId>(c.incidence(NodeId{0}).begin(), c.incidence(NodeId{0}).end()) == expected);
    CHECK(c.edge(EdgeId{2}).name == "e2");
  }

  TEST_CASE("contracting a self-edge only removes it") {
    const MultiGraph g = graph(2, {{0, 0}, {0, 1}});
    const MultiGraph c = contract_edge(g, EdgeId{0});
    CHECK(c.num_nodes() == 2);
    CHECK(c.num_edges() == 1);
    CHECK(c.incidence(NodeId{0}).size() == 1);
    CHECK(c.has_edge(EdgeId{1}));
    CHECK_FALSE(c.has_edge(EdgeId{0}));
  }

  TEST_CASE("cycle rank counts independent cycles") {
    CHECK(graph(3, {{0, 1}, {1, 2}}).cycle_rank() == 0);
    CHECK(graph(3, {{0, 1}, {1, 2}}).is_forest());
    CHECK(graph(3, {{0, 1}, {1, 2}, {2, 0}}).cycle_rank() == 1);
    CHECK(graph(2, {{0, 1}, {0, 1}}).cycle_rank() == 1);
    CHECK(graph(1, {{0, 0}}).cycle_rank() == 1);
    CHECK(graph(4, {{0, 1}, {2, 3}}).num_components() == 2);
    CHECK(graph(4, {{0, 1}, {2, 3}}).is_forest());
  }

  TEST_CASE("cycle rank is preserved by normal contraction and drops by one for self-edges") {
    MultiGraph g = graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 3}, {1, 3}});
    for (EdgeId e : normal_first_order(g)) {
      const std::size_t before = g.cycle_rank();
      const bool self = g.edge(e).is_self();
      g = contract_edge(g, e);
      CHECK(g.cycle_rank() == (self ? before - 1 : before));
    }
    CHECK(g.num_edges() == 0);
    CHECK(g.num_nodes() == 1);
  }

  TEST_CASE("normal-first order eliminates every normal edge before any self-edge") {
    const MultiGraph g = graph(3, {{0, 0}, {0, 1}, {1, 2}, {2, 0}});
    const auto order = normal_first_order(g);
    CHECK(is_elimination_order(g, order));
    CHECK(order == std::vector<EdgeId>{EdgeId{1}, EdgeId{2}, EdgeId{0}, EdgeId{3}});
    CHECK_FALSE(is_elimination_order(g, std::vector<EdgeId>{EdgeId{0}, EdgeId{1}}));
    CHECK_FALSE(is_elimination_order(g, std::vector<EdgeId>{EdgeId{0}, EdgeId{0}, EdgeId{1}, EdgeId{2}}));
  }

  TEST_CASE("self-first order removes self-edges as soon as they appear") {
    const MultiGraph g = graph(3, {{0, 1}, {0, 1}, {1, 2}, {2, 2}});
    const auto order = self_first_order(g);
    CHECK(is_elimination_order(g, order));
    // contracting e0 turns its parallel twin e1 into a self-edge
    CHECK(order == std::vector<EdgeId>{EdgeId{3}, EdgeId{0}, EdgeId{1}, EdgeId{2}});
  }

  TEST_CASE("directed edge names use plus and minus suffixes") {
    const MultiGraph g = graph(2, {{0, 1}});
    CHECK(directed_edge_name(g, plus(0)) == "e0+");
    CHECK(directed_edge_name(g, minus(0)) == "e0-");
  }
}
