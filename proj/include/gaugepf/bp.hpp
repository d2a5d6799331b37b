#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gaugepf/gauge.hpp"
#include "gaugepf/model.hpp"
#include "gaugepf/poly.hpp"

namespace gaugepf {

struct SolverConfig {
  /// Weight kept on the previous value: x <- damping * x_old + (1 - damping) * x_new.
  double damping = 0.5;
  /// Converged when the largest |residual| is at most this.
  double tolerance = 1e-10;
  std::size_t max_sweeps = 10000;
  std::size_t restarts = 16;
  std::uint64_t seed = 0;
  /// Relative softening applied to hard models before solving.
  double soften_eps = 1e-12;
};

/// Outcome of `solve_bp`.
struct BPGauge {
  GaugeVector x;
  double residual = 0.0;  ///< max |residual| at `x`
  double z = 0.0;         ///< gauge function at `x`
  double log_z = 0.0;
  std::size_t sweeps = 0;
  bool converged = false;
  bool softened = false;  ///< the model was softened before solving
  std::size_t converged_restarts = 0;
  /// Distinct gauge-function values of all converged restarts, descending.
  std::vector<double> stationary_values;
};

/// The model `solve_bp` actually works on: `m` itself if soft, otherwise
/// `soften(m, cfg.soften_eps)`.
[[nodiscard]] MultiGM solver_model(const MultiGM& m, const SolverConfig& cfg);

/// One residual per (node, incident directed edge), in node order then
/// incidence order: beta_edge - E_{b_a}[s_d], i.e. the BP condition divided
/// by h_a. Equals -d log z / d log x_d. Throws DegenerateError on hard models.
[[nodiscard]] std::vector<double> bp_residual(const MultiGM& m, const GaugeVector& x);

struct EdgePair {
  double plus = 0.0;
  double minus = 0.0;
};

/// Physical stationary pair of h / (1 + x+ x-) for one edge. Throws
/// DegenerateError when h10 or h01 is not positive.
[[nodiscard]] EdgePair edge_pair_update(const QuadCoeffs& c);

/// Value of h / (1 + x+ x-) at the physical pair.
[[nodiscard]] double bp_value(const QuadCoeffs& c);

/// QuadCoeffs of the model's h in the edge's pair at `x` (other values fixed).
[[nodiscard]] QuadCoeffs edge_quad_coeffs(const MultiGM& m, const GaugeVector& x, EdgeId edge);

/// Raises each coefficient to at least `eps` times the largest one.
[[nodiscard]] QuadCoeffs soften(const QuadCoeffs& c, double eps);

/// Damped Gauss-Seidel over edges (id order) with the closed-form pair
/// update, restarted from `cfg.restarts` log-uniform draws in [0.25, 4];
/// returns the converged gauge with the largest gauge function. When no
/// restart converges, `converged` is false and `x` is the best attempt.
[[nodiscard]] BPGauge solve_bp(const MultiGM& m, const SolverConfig& cfg = {});

struct Beliefs {
  /// node[i][s]: belief of local configuration s at graph().nodes()[i].
  std::vector<std::vector<double>> node;
  /// edge[k]: probability that graph().edges()[k] is set.
  std::vector<double> edge;
};

/// b_a(s) proportional to f_a(s) prod x^s; beta = x+ x- / (1 + x+ x-).
[[nodiscard]] Beliefs marginals_from_gauge(const MultiGM& m, const GaugeVector& x);

/// Largest violation of normalization and edge consistency.
[[nodiscard]] double polytope_violation(const MultiGM& m, const Beliefs& b);

/// min over edges of min(beta, 1 - beta).
[[nodiscard]] double interior_margin(const Beliefs& b);

/// E - S with E = -sum b log f and S = -sum b log b + sum_edges (beta log beta
/// + (1 - beta) log(1 - beta)); 0 log 0 = 0. Throws InputError when the
/// beliefs leave the marginal polytope by more than 1e-9.
[[nodiscard]] double bethe_free_energy(const MultiGM& m, const Beliefs& b);

/// Max-min Lagrangian L(beta, x); `beta` is indexed by edge position.
[[nodiscard]] double lagrangian_L(const MultiGM& m, std::span<const double> beta, const GaugeVector& x);
[[nodiscard]] double log_lagrangian_L(const MultiGM& m, std::span<const double> beta, const GaugeVector& x);

struct SaddleReport {
  double d2_plus = 0.0;   ///< second derivative in x+
  double d2_minus = 0.0;  ///< second derivative in x-
  double mixed = 0.0;     ///< mixed partial
  double determinant = 0.0;
  /// (h11 - g) / (1 + x+ x-) with g the pair value; the exact mixed partial
  /// at a stationary pair.
  double mixed_closed_form = 0.0;
  [[nodiscard]] bool indefinite() const { return determinant < 0.0; }
};

/// Central finite-difference Hessian (relative step 1e-5) of
/// h(x) / (1 + x+ x-) in the edge's pair, all other variables fixed.
[[nodiscard]] SaddleReport saddle_check(const MultiGM& m, const GaugeVector& x_bp, EdgeId edge);

struct SequenceEntry {
  std::size_t step = 0;
  std::optional<EdgeId> eliminated;  ///< edge removed to reach this stage
  double z_vbp = 0.0;
  bool converged = false;
  std::size_t num_edges = 0;
  std::size_t num_self_edges = 0;
  MultiGM model;
};

struct SequenceReport {
  std::vector<SequenceEntry> entries;
  double z_exact = 0.0;  ///< partition function of the (softened) model
  bool softened = false;
  /// Steps m with z_vbp[m] < z_vbp[m-1] beyond the relative slack.
  std::vector<std::size_t> decreases;
  [[nodiscard]] bool monotone() const { return decreases.empty(); }
  [[nodiscard]] bool all_converged() const;
};

/// Contracts `order` exactly (after softening a hard model once) and solves
/// BP from scratch at every stage.
[[nodiscard]] SequenceReport bp_contract_sequence(const MultiGM& m, std::span<const EdgeId> order,
                                                  const SolverConfig& cfg = {}, double slack = 1e-9);

/// BP elimination of a normal edge, H00 + H11. Throws InputError for
/// self-edges, whose BP reduction is not polynomial.
[[nodiscard]] FactoredGaugePoly bp_normal_contract(const FactoredGaugePoly& h, EdgeId edge);

}  // namespace gaugepf
