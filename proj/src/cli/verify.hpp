#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

#include "gaugepf/bp.hpp"
#include "gaugepf/model.hpp"

namespace gaugepf::cli {

struct VerifyOptions {
  SolverConfig solver;
  std::size_t gauges_per_model = 10;
  std::uint64_t seed = 0;
  /// Mutation hook: flips the sign of one gauge-matrix entry.
  bool mutate_gauge_sign = false;
};

struct InvariantTally {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  /// Largest observed error, or the largest determinant for the saddle check.
  double worst = -std::numeric_limits<double>::infinity();

  void record(bool ok, double error);
  [[nodiscard]] bool passed() const { return failed == 0; }
};

struct VerifyOutcome {
  std::vector<InvariantTally> invariants;
  std::size_t models = 0;
  std::size_t nonconverged = 0;

  [[nodiscard]] bool all_passed() const;
};

[[nodiscard]] VerifyOutcome verify_models(const std::vector<MultiGM>& models, const VerifyOptions& opts);

[[nodiscard]] nlohmann::ordered_json to_json(const VerifyOutcome& outcome);

}  // namespace gaugepf::cli
