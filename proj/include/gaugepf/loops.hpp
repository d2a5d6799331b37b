#pragma once

#include <span>
#include <vector>

#include "gaugepf/gauge.hpp"
#include "gaugepf/model.hpp"

namespace gaugepf {

/// Edge subset (one bit per edge position) in which no node has colored
/// degree exactly one; a colored self-edge adds two to its node.
using GeneralizedLoop = Config;

/// All generalized loops of `g`, the empty one included, sorted by their
/// bitmask (edge position i is bit i). Throws GuardError above `guard` edges.
[[nodiscard]] std::vector<GeneralizedLoop> enumerate_generalized_loops(const MultiGraph& g,
                                                                       std::size_t guard = kEnumerationGuard);

/// Residual bound a gauge must meet before loop terms are evaluated.
inline constexpr double kLoopGaugeTolerance = 1e-8;

/// z(x) * prod_{colored nodes} mu_a / prod_{colored edges} beta (1 - beta), with
///   mu_a = sum_s f(s) prod x^s prod_{colored slots} (s_d - beta_d) / h_a(x_a).
/// Throws ConvergenceError when `x_bp` is not a BP gauge of `m`.
[[nodiscard]] double loop_term(const MultiGM& m, const GaugeVector& x_bp, std::span<const std::uint8_t> loop);

struct LoopTerm {
  GeneralizedLoop loop;
  double term = 0.0;
};

/// Every generalized loop with its term, in `enumerate_generalized_loops` order.
[[nodiscard]] std::vector<LoopTerm> loop_series(const MultiGM& m, const GaugeVector& x_bp);

/// Sum of `loop_series` in its order; equals the partition function.
[[nodiscard]] double loop_series_sum(const MultiGM& m, const GaugeVector& x_bp);

}  // namespace gaugepf
