#include <random>

#include "doctest.h"
#include "gaugepf/errors.hpp"
#include "gaugepf/poly.hpp"
#include "gaugepf/random_models.hpp"
#include "oracles.hpp"

using namespace gaugepf;

TEST_SUITE("poly") {
  TEST_CASE("node polynomials keep nonzero coefficients only") {
    const MultiGM m = matching_model(1, 2, {{0, 0}, {0, 1}}, {2.0, 3.0}, MatchingKind::MonomerDimer);
    const NodePoly p = node_poly_from_factor(NodeId{0}, m.factor_at(0));
    CHECK(p.coefficients.size() == 3);
    CHECK(p.coefficients.at(0) == 1.0);
    CHECK(p.coefficients.at(1) == 2.0);
    CHECK(p.coefficients.at(2) == 3.0);
    CHECK(p.evaluate(std::vector<double>{2.0, 5.0}) == doctest::Approx(1.0 + 4.0 + 15.0));
  }

  TEST_CASE("quad coefficients of the two-node example") {
    const MultiGM m = two_node_model(1, 2, 3, 4);
    const FactoredGaugePoly h = FactoredGaugePoly::from_model(m);
    const QuadCoeffs c = quad_coeffs(h, EdgeId{0}, GaugeVector::constant(m.graph(), 1.0));
    CHECK(c.h00 == 3.0);
    CHECK(c.h10 == 6.0);
    CHECK(c.h01 == 4.0);
    CHECK(c.h11 == 8.0);
  }

  TEST_CASE("quad coefficients reproduce h as a bilinear function of the pair") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
      RandomModelOptions opts;
      opts.num_edges = 1 + static_cast<std::size_t>(i % 6);
      const MultiGM m = random_soft_model(rng, opts);
      const FactoredGaugePoly h = FactoredGaugePoly::from_model(m);
      GaugeVector x = random_gauge(m.graph(), rng, 0.2, 5.0);
      const EdgeId e = m.graph().edges()[static_cast<std::size_t>(i) % m.graph().num_edges()].id;
      const QuadCoeffs c = quad_coeffs(h, e, x);
      const double p = x[{e, Polarity::Plus}];
      const double q = x[{e, Polarity::Minus}];
      CHECK(h.evaluate(x) == doctest::Approx(c.h00 + c.h10 * p + c.h01 * q + c.h11 * p * q).epsilon(1e-12));
    }
  }

  TEST_CASE("symbolic elimination matches contracting the model") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 40; ++i) {
      RandomModelOptions opts;
      opts.num_edges = 1 + static_cast<std::size_t>(i % 8);
      MultiGM m = random_soft_model(rng, opts);
      const double z = oracle::brute_partition(m);
      FactoredGaugePoly h = FactoredGaugePoly::from_model(m);
      std::vector<EdgeId> order;
      for (const Edge& e : m.graph().edges()) order.push_back(e.id);
      std::shuffle(order.begin(), order.end(), rng);
      for (EdgeId e : order) {
        h = exact_contract_poly(h, e);
        m = contract_model(m, e);
        CHECK(h == FactoredGaugePoly::from_model(m));
        const GaugeVector x = random_gauge(m.graph(), rng, 0.2, 5.0);
        CHECK(zeta_eval(h, x) == doctest::Approx(gauge_function(m, x)).epsilon(1e-10));
      }
      CHECK(zeta_eval(h, GaugeVector{}) == doctest::Approx(z).epsilon(1e-10));
    }
  }

  TEST_CASE("polynomials wider than the cap are refused") {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ends(11, {0, 0});
    std::mt19937_64 rng(1);
    const MultiGM m = random_factors(MultiGraph::from_edge_list(1, ends), rng);
    CHECK_THROWS_AS((void)FactoredGaugePoly::from_model(m), GuardError);
  }

  TEST_CASE("contraction that would exceed the cap is refused") {
    std::mt19937_64 rng(2);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ok;
    for (int i = 0; i < 9; ++i) ok.emplace_back(0, 0);
    ok.emplace_back(0, 1);
    ok.emplace_back(1, 1);
    ok.emplace_back(1, 1);
    const MultiGM m2 = random_factors(MultiGraph::from_edge_list(2, ok), rng);
    const FactoredGaugePoly h = FactoredGaugePoly::from_model(m2);
    // 18 + 4 remaining slots after merging
    CHECK_THROWS_AS((void)exact_contract_poly(h, EdgeId{9}), GuardError);
  }

  TEST_CASE("bistability holds for matching models and fails for the unstable self-edge") {
    const MultiGM perm = soften(permanent_model({{1, 1}, {1, 1}}), 1e-12);
    const FactoredGaugePoly h = FactoredGaugePoly::from_model(perm);
    for (const Edge& e : perm.graph().edges()) {
      const BistableReport r = bistable_condition_sample(h, e.id, 50, 3);
      CHECK(r.passed == r.samples);
    }
    const FactoredGaugePoly bad = FactoredGaugePoly::from_model(bouquet_model({1, 2, 2, 2}));
    const BistableReport r = bistable_condition_sample(bad, EdgeId{0}, 10, 3);
    CHECK(r.passed == 0);
    CHECK(r.worst_ratio == doctest::Approx(2.0));
  }
}
