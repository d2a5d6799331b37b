#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "gaugepf/multigraph.hpp"

namespace gaugepf::detail {

struct BitSlot {
  std::size_t node;
  std::size_t mask;
};

/// For each edge position, the (node position, local bitmask) pairs that its
/// configuration bit drives. A self-edge drives two bits of one node.
inline std::vector<std::vector<BitSlot>> edge_slots(const MultiGraph& g) {
  std::vector<std::vector<BitSlot>> slots(g.num_edges());
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    auto inc = g.incidence_at(n);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      const std::size_t e = g.edge_index(inc[i].edge);
      auto it = std::find_if(slots[e].begin(), slots[e].end(),
                             [&](const BitSlot& s) { return s.node == n; });
      if (it != slots[e].end()) {
        it->mask |= std::size_t{1} << i;
      } else {
        slots[e].push_back({n, std::size_t{1} << i});
      }
    }
  }
  return slots;
}

/// Visits every configuration of the edges in ascending index order, passing
/// the per-node local table indices. `visit(local, config_index)`.
template <typename Visit>
void for_each_config(const MultiGraph& g, Visit&& visit) {
  const auto slots = edge_slots(g);
  std::vector<std::size_t> local(g.num_nodes(), 0);
  const std::size_t total = std::size_t{1} << g.num_edges();
  for (std::size_t c = 0; c < total; ++c) {
    if (c > 0) {
      std::size_t flipped = c ^ (c - 1);
      for (std::size_t e = 0; flipped != 0; ++e, flipped >>= 1) {
        if (flipped & 1U) {
          for (const BitSlot& s : slots[e]) local[s.node] ^= s.mask;
        }
      }
    }
    visit(static_cast<const std::vector<std::size_t>&>(local), c);
  }
}

}  // namespace gaugepf::detail
