#include "cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gaugepf/gauge.hpp"
#include "gaugepf/loops.hpp"
#include "gaugepf/poly.hpp"

namespace gaugepf::cli {

void InvariantTally::record(bool ok, double error) {
  ++checked;
  if (!ok) ++failed;
  if (std::isnan(error)) {
    worst = error;
  } else if (!std::isnan(worst)) {
    worst = std::max(worst, error);
  }
}

bool VerifyOutcome::all_passed() const {
  return std::all_of(invariants.begin(), invariants.end(), [](const InvariantTally& t) { return t.passed(); });
}

namespace {

double rel_error(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

GaugeMatrix checked_matrix(double p, double q, bool mutate) {
  GaugeMatrix g = gauge_matrix(p, q);
  if (mutate) g[1][0] = -g[1][0];
  return g;
}

// Largest entry of |G(p, q)^T G(q, p) - I|.
double orthogonality_error(double p, double q, bool mutate) {
  const GaugeMatrix a = checked_matrix(p, q, mutate);
  const GaugeMatrix b = checked_matrix(q, p, mutate);
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double v = a[0][i] * b[0][j] + a[1][i] * b[1][j];
      worst = std::max(worst, std::abs(v - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

enum Slot : std::size_t {
  kOrthogonality,
  kGaugeInvariance,
  kContractCommutes,
  kEliminationEquivalence,
  kDiffMarg,
  kBpConverged,
  kNoLooseColoring,
  kValueIdentity,
  kSaddle,
  kLoopSum,
  kLoopTerms,
  kTreeExactness,
  kSlotCount
};

const char* const kNames[kSlotCount] = {
    "orthogonality",   "gauge_invariance", "contract_commutes", "elimination_equivalence",
    "diff_marg",       "bp_converged",     "no_loose_coloring", "value_identity",
    "saddle",          "loop_sum",         "loop_terms",        "tree_exactness",
};

void check_algebra(const MultiGM& m, double z, const VerifyOptions& opts, std::mt19937_64& rng,
                   std::vector<InvariantTally>& t) {
  const MultiGraph& g = m.graph();
  for (std::size_t k = 0; k < opts.gauges_per_model; ++k) {
    const GaugeVector x = random_gauge(g, rng, 0.2, 5.0);
    double ortho = 0.0;
    for (const Edge& e : g.edges()) {
      ortho = std::max(ortho, orthogonality_error(x[{e.id, Polarity::Plus}], x[{e.id, Polarity::Minus}],
                                                  opts.mutate_gauge_sign));
    }
    t[kOrthogonality].record(ortho <= 1e-13, ortho);
    const double err = rel_error(gauged_sum(transform_factors(m, x)), z);
    t[kGaugeInvariance].record(err <= 1e-9, err);
  }

  // random elimination order, checked at every stage
  std::vector<EdgeId> order;
  for (const Edge& e : g.edges()) order.push_back(e.id);
  std::shuffle(order.begin(), order.end(), rng);
  FactoredGaugePoly h = FactoredGaugePoly::from_model(m);
  MultiGM stage = m;
  bool commutes = true;
  double worst_eq = 0.0;
  for (EdgeId e : order) {
    h = exact_contract_poly(h, e);
    stage = contract_model(stage, e);
    commutes = commutes && h == FactoredGaugePoly::from_model(stage);
    for (int k = 0; k < 3; ++k) {
      const GaugeVector x = random_gauge(stage.graph(), rng, 0.2, 5.0);
      worst_eq = std::max(worst_eq, rel_error(zeta_eval(h, x), gauge_function(stage, x)));
    }
  }
  t[kContractCommutes].record(commutes, commutes ? 0.0 : 1.0);
  t[kEliminationEquivalence].record(worst_eq <= 1e-10, worst_eq);
  const double diff = rel_error(zeta_eval(h, GaugeVector{}), z);
  t[kDiffMarg].record(diff <= 1e-10, diff);
}

void check_bp(const MultiGM& input, const VerifyOptions& opts, std::vector<InvariantTally>& t,
              std::size_t& nonconverged) {
  const MultiGM m = solver_model(input, opts.solver);
  const MultiGraph& g = m.graph();
  const double z = partition_exact(m);
  const BPGauge bp = solve_bp(m, opts.solver);
  t[kBpConverged].record(bp.converged, bp.residual);
  if (!bp.converged) {
    ++nonconverged;
    return;
  }

  double loose = 0.0;
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    const NodeId a = g.nodes()[n].id;
    auto inc = g.incidence_at(n);
    const double h = h_node(m, a, bp.x);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      const double p = bp.x.product(inc[i].edge);
      const double q = q_node(m, bp.x, a, std::uint32_t{1} << i);
      loose = std::max(loose, std::abs(q) * p / ((1.0 + p) * h));
    }
  }
  t[kNoLooseColoring].record(loose <= 1e-8, loose);

  const double f = bethe_free_energy(m, marginals_from_gauge(m, bp.x));
  const double value_err = std::abs(f + bp.log_z);
  t[kValueIdentity].record(value_err <= 1e-8, value_err);

  for (const Edge& e : g.edges()) {
    const SaddleReport s = saddle_check(m, bp.x, e.id);
    t[kSaddle].record(s.indefinite(), s.determinant);
  }

  const auto series = loop_series(m, bp.x);
  double sum = 0.0;
  double worst_term = 0.0;
  for (const LoopTerm& lt : series) {
    sum += lt.term;
    const double direct = z_sigma(m, bp.x, lt.loop);
    worst_term = std::max(worst_term, std::abs(lt.term - direct) / std::max(std::abs(direct), 1e-300));
  }
  const double sum_err = rel_error(sum, z);
  t[kLoopSum].record(sum_err <= 1e-8, sum_err);
  t[kLoopTerms].record(worst_term <= 1e-9, worst_term);

  if (g.is_forest()) {
    const double tree_err = rel_error(bp.z, z);
    const bool ok = tree_err <= 1e-6 && series.size() == 1;
    t[kTreeExactness].record(ok, tree_err);
  }
}

}  // namespace

VerifyOutcome verify_models(const std::vector<MultiGM>& models, const VerifyOptions& opts) {
  VerifyOutcome out;
  for (std::size_t s = 0; s < kSlotCount; ++s) out.invariants.push_back({kNames[s]});
  std::mt19937_64 rng(opts.seed);
  for (const MultiGM& m : models) {
    ++out.models;
    check_algebra(m, partition_exact(m), opts, rng, out.invariants);
    check_bp(m, opts, out.invariants, out.nonconverged);
  }
  return out;
}

nlohmann::ordered_json to_json(const VerifyOutcome& outcome) {
  nlohmann::ordered_json inv = nlohmann::ordered_json::object();
  for (const InvariantTally& t : outcome.invariants) {
    inv[t.name] = {{"pass", t.passed()}, {"checked", t.checked}, {"failed", t.failed}, {"worst", t.worst}};
  }
  return {{"models", outcome.models},
          {"nonconverged", outcome.nonconverged},
          {"all_pass", outcome.all_passed()},
          {"invariants", std::move(inv)}};
}

}  // namespace gaugepf::cli
