#include <cmath>
#include <random>

#include "doctest.h"
#include "gaugepf/bp.hpp"
#include "gaugepf/errors.hpp"
#include "gaugepf/loops.hpp"
#include "gaugepf/random_models.hpp"
#include "oracles.hpp"

using namespace gaugepf;

namespace {

std::uint64_t mask_of(const GeneralizedLoop& loop) {
  std::uint64_t m = 0;
  for (std::size_t k = 0; k < loop.size(); ++k) {
    if (loop[k]) m |= std::uint64_t{1} << k;
  }
  return m;
}

}  // namespace

TEST_SUITE("loops") {
  TEST_CASE("small graphs") {
    using Endpoints = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
    CHECK(enumerate_generalized_loops(MultiGraph::from_edge_list(4, Endpoints{{0, 1}, {1, 2}, {1, 3}})).size() == 1);
    const auto tri = enumerate_generalized_loops(triangle_model().graph());
    REQUIRE(tri.size() == 2);
    CHECK(mask_of(tri[0]) == 0);
    CHECK(mask_of(tri[1]) == 7);
    const auto self = enumerate_generalized_loops(bouquet_model({2, 5, 5, 3}).graph());
    REQUIRE(self.size() == 2);
    CHECK(mask_of(self[1]) == 1);
  }

  TEST_CASE("pruned search matches filtering every subset") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
      RandomModelOptions opts;
      opts.num_edges = 1 + static_cast<std::size_t>(i % 10);
      const MultiGraph g = random_soft_model(rng, opts).graph();
      std::vector<std::uint64_t> masks;
      for (const auto& l : enumerate_generalized_loops(g)) masks.push_back(mask_of(l));
      CHECK(masks == oracle::brute_loops(g));
    }
  }

  TEST_CASE("enumeration guard") {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ends(25, {0, 1});
    CHECK_THROWS_AS((void)enumerate_generalized_loops(MultiGraph::from_edge_list(2, ends)), GuardError);
  }

  TEST_CASE("bouquet series: BP value plus one negative term gives 5") {
    const MultiGM m = bouquet_model({2, 5, 5, 3});
    const BPGauge bp = solve_bp(m);
    const auto series = loop_series(m, bp.x);
    REQUIRE(series.size() == 2);
    CHECK(series[0].term == doctest::Approx((5.0 + std::sqrt(101.0)) / 2.0));
    CHECK(series[1].term < 0.0);
    CHECK(loop_series_sum(m, bp.x) == doctest::Approx(5.0).epsilon(1e-12));
  }

  TEST_CASE("series sums to Z and every term matches the direct series term") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 25; ++i) {
      RandomModelOptions opts;
      opts.num_edges = 1 + static_cast<std::size_t>(i % 10);
      const MultiGM m = random_soft_model(rng, opts);
      const BPGauge bp = solve_bp(m);
      REQUIRE(bp.converged);
      const double z = oracle::brute_partition(m);
      double sum = 0.0;
      for (const LoopTerm& t : loop_series(m, bp.x)) {
        sum += t.term;
        CHECK(t.term == doctest::Approx(z_sigma(m, bp.x, t.loop)).epsilon(1e-9));
        CHECK(t.term == doctest::Approx(loop_term(m, bp.x, t.loop)).epsilon(1e-15));
      }
      CHECK(sum == doctest::Approx(z).epsilon(1e-8));
    }
  }

  TEST_CASE("terms outside the generalized loops vanish at the BP gauge") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 10; ++i) {
      RandomModelOptions opts;
      opts.num_edges = 3 + static_cast<std::size_t>(i % 4);
      const MultiGM m = random_soft_model(rng, opts);
      const BPGauge bp = solve_bp(m);
      REQUIRE(bp.converged);
      const auto loops = oracle::brute_loops(m.graph());
      const std::size_t e = m.graph().num_edges();
      for (std::uint64_t c = 0; c < (std::uint64_t{1} << e); ++c) {
        if (std::binary_search(loops.begin(), loops.end(), c)) continue;
        Config sigma(e);
        for (std::size_t k = 0; k < e; ++k) sigma[k] = static_cast<std::uint8_t>((c >> k) & 1U);
        CHECK(std::abs(z_sigma(m, bp.x, sigma)) <= 1e-8 * bp.z);
      }
    }
  }

  TEST_CASE("trees have one term equal to Z") {
    std::mt19937_64 rng(43);
    const MultiGM m = random_tree_model(rng, 7);
    const BPGauge bp = solve_bp(m);
    const auto series = loop_series(m, bp.x);
    REQUIRE(series.size() == 1);
    CHECK(series[0].term == doctest::Approx(oracle::brute_partition(m)).epsilon(1e-8));
  }

  TEST_CASE("loop terms need a BP gauge") {
    const MultiGM m = triangle_model(2.0);
    const GaugeVector x = GaugeVector::constant(m.graph(), 0.3);
    CHECK_THROWS_AS((void)loop_series(m, x), ConvergenceError);
    CHECK_THROWS_AS((void)loop_term(m, x, Config{0, 0, 0}), ConvergenceError);
  }
}
