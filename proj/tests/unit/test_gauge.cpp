#include <cmath>
#include <random>

#include "doctest.h"
#include "gaugepf/errors.hpp"
#include "gaugepf/gauge.hpp"
#include "gaugepf/poly.hpp"
#include "gaugepf/random_models.hpp"
#include "oracles.hpp"

using namespace gaugepf;

namespace {

Config bits_of(std::uint64_t c, std::size_t n) {
  Config out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<std::uint8_t>((c >> k) & 1U);
  return out;
}

}  // namespace

TEST_SUITE("gauge") {
  TEST_CASE("unit gauge gives the Hadamard-like rotation") {
    const GaugeMatrix g = gauge_matrix(1.0, 1.0);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(g[0][0] == doctest::Approx(r));
    CHECK(g[0][1] == doctest::Approx(r));
    CHECK(g[1][0] == doctest::Approx(-r));
    CHECK(g[1][1] == doctest::Approx(r));
  }

  TEST_CASE("matrix matches its entry formulas and is orthogonal against its sibling") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(std::log(1e-3), std::log(1e3));
    for (int i = 0; i < 200; ++i) {
      const double p = std::exp(u(rng));
      const double q = std::exp(u(rng));
      const GaugeMatrix a = gauge_matrix(p, q);
      const GaugeMatrix b = gauge_matrix(q, p);
      const GaugeMatrix ref = oracle::reference_matrix(p, q);
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          CHECK(a[r][c] == doctest::Approx(ref[r][c]).epsilon(1e-14));
          const double prod = a[0][r] * b[0][c] + a[1][r] * b[1][c];
          CHECK(std::abs(prod - (r == c ? 1.0 : 0.0)) <= 1e-13);
        }
      }
    }
  }

  TEST_CASE("gauge values below the floor are rejected") {
    CHECK_THROWS_AS((void)gauge_matrix(1e-13, 1.0), InputError);
    CHECK_THROWS_AS((void)gauge_matrix(1.0, 0.0), InputError);
    CHECK_THROWS_AS((void)gauge_matrix(1.0, INFINITY), InputError);
  }

  TEST_CASE("gauge vector lookups") {
    const MultiGM m = two_node_model(1, 2, 3, 4);
    GaugeVector x = GaugeVector::constant(m.graph(), 2.0);
    x.set({EdgeId{0}, Polarity::Minus}, 3.0);
    CHECK(x.product(EdgeId{0}) == doctest::Approx(6.0));
    const DirectedEdgeId missing{EdgeId{4}, Polarity::Plus};
    CHECK_THROWS_AS((void)x[missing], LookupError);
    CHECK_THROWS_AS(x.set({EdgeId{0}, Polarity::Plus}, -1.0), InputError);
    CHECK_THROWS_AS(GaugeVector({EdgeId{1}, EdgeId{0}}, {1, 1, 1, 1}), InputError);
  }

  TEST_CASE("transformed sum equals Z for random gauges") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 25; ++i) {
      RandomModelOptions opts;
      opts.num_edges = 1 + static_cast<std::size_t>(i % 7);
      const MultiGM m = random_soft_model(rng, opts);
      const double z = oracle::brute_partition(m);
      const GaugeVector x = random_gauge(m.graph(), rng, 0.1, 10.0);
      CHECK(gauged_sum(transform_factors(m, x)) == doctest::Approx(z).epsilon(1e-10));
      CHECK(oracle::brute_gauged_sum(m, x) == doctest::Approx(z).epsilon(1e-10));
    }
  }

  TEST_CASE("series terms equal gauged products term by term") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 15; ++i) {
      RandomModelOptions opts;
      opts.num_edges = 1 + static_cast<std::size_t>(i % 5);
      const MultiGM m = random_soft_model(rng, opts);
      const GaugeVector x = random_gauge(m.graph(), rng, 0.2, 5.0);
      const GaugedModel gm = transform_factors(m, x);
      const std::size_t e = m.graph().num_edges();
      double total = 0.0;
      for (std::uint64_t c = 0; c < (std::uint64_t{1} << e); ++c) {
        const Config sigma = bits_of(c, e);
        const double t = z_sigma(m, x, sigma);
        total += t;
        CHECK(t == doctest::Approx(gauged_term(gm, sigma)).epsilon(1e-9).scale(oracle::brute_partition(m)));
      }
      CHECK(total == doctest::Approx(oracle::brute_partition(m)).epsilon(1e-10));
    }
  }

  TEST_CASE("the empty term is the gauge function") {
    std::mt19937_64 rng(4);
    const MultiGM m = random_soft_model(rng);
    const GaugeVector x = random_gauge(m.graph(), rng, 0.2, 5.0);
    double expected = 1.0;
    for (const Node& n : m.graph().nodes()) expected *= h_node(m, n.id, x);
    for (const Edge& e : m.graph().edges()) expected /= 1.0 + x.product(e.id);
    CHECK(gauge_function(m, x) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(z_sigma(m, x, Config(m.graph().num_edges(), 0)) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(log_gauge_function(m, x) == doctest::Approx(std::log(expected)).epsilon(1e-13));
  }

  TEST_CASE("two-node gauge function is flat in x+ when x- = 2") {
    const MultiGM m = two_node_model(1, 2, 3, 4);
    for (double xp : {0.5, 1.0, 3.0, 7.0}) {
      const GaugeVector x({EdgeId{0}}, {xp, 2.0});
      CHECK(gauge_function(m, x) == doctest::Approx(11.0));
    }
  }

  TEST_CASE("coloring masks beyond the incidence list are rejected") {
    const MultiGM m = two_node_model(1, 2, 3, 4);
    const GaugeVector x = GaugeVector::constant(m.graph(), 1.0);
    CHECK_THROWS_AS((void)q_node(m, x, NodeId{0}, 2U), InputError);
  }
}
