#include <random>
#include <string>

#include "doctest.h"
#include "gaugepf/errors.hpp"
#include "gaugepf/model_io.hpp"
#include "gaugepf/random_models.hpp"

using namespace gaugepf;

namespace {

const char* const kTwoNode = R"({
  "nodes": ["a", "b"],
  "edges": [{"id": "e", "tail": "a", "head": "b"}],
  "factors": {
    "a": {"order": ["e+"], "table": {"0": 1, "1": 2}},
    "b": {"order": ["e-"], "table": {"0": 3, "1": 4}}
  }
})";

std::string error_of(const std::string& text) {
  try {
    (void)parse_model(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("parses the two-node example") {
    const MultiGM m = parse_model(kTwoNode);
    CHECK(m.graph().num_nodes() == 2);
    CHECK(m.graph().edges()[0].name == "e");
    CHECK(partition_exact(m) == 11.0);
  }

  TEST_CASE("table keys follow the declared order") {
    const char* text = R"({
      "nodes": [1],
      "edges": [{"id": 0, "tail": 1, "head": 1}, {"id": 1, "tail": 1, "head": 1}],
      "factors": {"1": {"order": ["1-", "0+", "1+", "0−"],
                        "table": {"0000": 1, "1000": 2, "0100": 3, "0010": 4, "0001": 5,
                                  "1100": 6, "1010": 7, "1001": 8, "0110": 9, "0101": 10, "0011": 11,
                                  "1110": 12, "1101": 13, "1011": 14, "0111": 15, "1111": 16}}}
    })";
    const MultiGM m = parse_model(text);
    // incidence is (0+, 0-, 1+, 1-); Z sums entries where both slots of each edge agree
    // keys with 1- == 1+ and 0+ == 0-: 0000, 1010, 0101, 1111
    CHECK(partition_exact(m) == doctest::Approx(1 + 7 + 10 + 16));
    const MultiGM again = parse_model(serialize_model(m));
    CHECK(again.factors()[0] == m.factors()[0]);
  }

  TEST_CASE("round trip preserves tables and orders") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
      RandomModelOptions opts;
      opts.num_edges = 1 + static_cast<std::size_t>(i % 8);
      const MultiGM m = random_soft_model(rng, opts);
      const std::string text = serialize_model(m);
      const MultiGM back = parse_model(text);
      REQUIRE(back.graph().num_nodes() == m.graph().num_nodes());
      for (std::size_t n = 0; n < m.graph().num_nodes(); ++n) CHECK(back.factor_at(n) == m.factor_at(n));
      CHECK(serialize_model(back) == text);
    }
  }

  TEST_CASE("malformed keys name the node") {
    std::string bad = kTwoNode;
    bad.replace(bad.find("\"1\": 2"), 6, "\"x\": 2");
    const std::string msg = error_of(bad);
    CHECK(msg.find("node 'a'") != std::string::npos);
    CHECK(msg.find("'x'") != std::string::npos);
  }

  TEST_CASE("incomplete tables need the sparse marker") {
    const char* sparse = R"({"nodes": ["a"], "edges": [{"id": "s", "tail": "a", "head": "a"}],
      "factors": {"a": {"order": ["s+", "s-"], "table": {"00": 2, "11": 3}}}})";
    CHECK(error_of(sparse).find("soft") != std::string::npos);
    const char* marked = R"({"nodes": ["a"], "edges": [{"id": "s", "tail": "a", "head": "a"}],
      "factors": {"a": {"soft": false, "order": ["s+", "s-"], "table": {"00": 2, "11": 3}}}})";
    const MultiGM m = parse_model(marked);
    CHECK_FALSE(m.soft());
    CHECK(partition_exact(m) == 5.0);
  }

  TEST_CASE("structural errors") {
    CHECK(error_of("{").find("malformed JSON") != std::string::npos);
    CHECK(error_of(R"({"nodes": ["a"], "edges": [{"id": "e", "tail": "a", "head": "z"}], "factors": {}})")
              .find("unknown node 'z'") != std::string::npos);
    CHECK(error_of(R"({"nodes": ["a"], "edges": [], "factors": {}})").find("missing factor of node 'a'") !=
          std::string::npos);
    CHECK(error_of(R"({"nodes": ["a", "a"], "edges": [], "factors": {}})").find("duplicate") != std::string::npos);
    std::string wrong_order = kTwoNode;
    wrong_order.replace(wrong_order.find("[\"e+\"]"), 6, "[\"e-\"]");
    CHECK(error_of(wrong_order).find("node 'a'") != std::string::npos);
    std::string negative = kTwoNode;
    negative.replace(negative.find("\"1\": 2"), 6, "\"1\": -2");
    CHECK(error_of(negative).find("nonnegative") != std::string::npos);
  }

  TEST_CASE("digest is FNV-1a") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  }
}
