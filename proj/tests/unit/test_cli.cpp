#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gaugepf/cli.hpp"
#include "gaugepf/model_io.hpp"
#include "gaugepf/random_models.hpp"
#include "json.hpp"

using namespace gaugepf;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  nlohmann::json report() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_model(const std::string& name, const MultiGM& m) {
  const fs::path dir = fs::temp_directory_path() / "gaugepf_unit";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << serialize_model(m);
  return p.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("exact prints Z, the MAP energy and the argmax") {
    const Run r = run({"exact", write_model("two.json", two_node_model(1, 2, 3, 4))});
    CHECK(r.code == 0);
    const auto j = r.report();
    CHECK(j["results"]["Z"] == 11.0);
    CHECK(j["results"]["map_energy"].get<double>() == doctest::Approx(-std::log(8.0)));
    CHECK(j["results"]["argmax"]["e0"] == 1);
    CHECK(run({"exact", write_model("tri.json", triangle_model())}).report()["results"]["Z"] == 8.0);
  }

  TEST_CASE("bp on a tree is flagged exact; the bouquet overshoots") {
    std::mt19937_64 rng(1);
    const Run tree = run({"bp", write_model("tree.json", random_tree_model(rng, 4))});
    CHECK(tree.code == 0);
    CHECK(tree.report()["results"]["exact"] == true);
    const Run bq = run({"bp", write_model("bq.json", bouquet_model({2, 5, 5, 3}))});
    const auto j = bq.report();
    CHECK(j["results"]["Z_vbp"].get<double>() == doctest::Approx(7.5249378106));
    CHECK(j["results"]["Z"] == 5.0);
    CHECK(j["results"]["exact"] == false);
  }

  TEST_CASE("bp on the 2x2 permanent stays below 2") {
    const Run r = run({"bp", write_model("perm.json", permanent_model({{1, 1}, {1, 1}}))});
    CHECK(r.code == 0);
    CHECK(r.report()["results"]["softened"] == true);
    CHECK(r.report()["results"]["Z_vbp"].get<double>() <= 2.0);
  }

  TEST_CASE("contract modes") {
    const std::string perm = write_model("perm2.json", permanent_model({{1, 1}, {1, 1}}));
    const auto exact = run({"contract", perm}).report();
    CHECK(exact["results"]["constant"] == true);
    const Run seq = run({"contract", perm, "--mode", "bp-sequence"});
    CHECK(seq.code == 0);
    CHECK(seq.report()["results"]["monotone"] == true);
    CHECK(seq.report()["results"]["final_equals_Z"] == true);

    const std::string bad = write_model("bad_self.json", bouquet_model({1, 2, 2, 2}));
    const Run dec = run({"contract", bad, "--mode", "bp-sequence"});
    CHECK(dec.code == 0);
    CHECK(dec.report()["results"]["monotone"] == false);

    CHECK(run({"contract", perm, "--order", "e3,e2,e1,e0"}).code == 0);
    CHECK(run({"contract", perm, "--order", "e3,e2"}).code == 3);
    CHECK(run({"contract", perm, "--order", "e9,e2,e1,e0"}).code == 3);
    CHECK(run({"contract", perm, "--mode", "fast"}).code == 3);
  }

  TEST_CASE("loops report") {
    const auto tri = run({"loops", write_model("tri2.json", triangle_model(1.5))}).report();
    CHECK(tri["results"]["num_loops"] == 2);
    CHECK(tri["results"]["relative_error"].get<double>() <= 1e-8);
    std::mt19937_64 rng(2);
    const auto tree = run({"loops", write_model("tree2.json", random_tree_model(rng, 5))}).report();
    CHECK(tree["results"]["num_loops"] == 1);
  }

  TEST_CASE("verify passes on random models and fails under the gauge-sign mutation") {
    const Run ok = run({"verify", "--random", "10", "--edges", "6", "--seed", "7"});
    CHECK(ok.code == 0);
    CHECK(ok.report()["results"]["all_pass"] == true);
    const Run bad = run({"verify", "--random", "3", "--edges", "4", "--seed", "7", "--mutate", "gauge-sign"});
    CHECK(bad.code == 1);
    CHECK(bad.report()["results"]["invariants"]["orthogonality"]["pass"] == false);
  }

  TEST_CASE("exit codes for bad input and non-convergence") {
    CHECK(run({"exact", "/nonexistent/model.json"}).code == 3);
    CHECK(run({"frobnicate"}).code == 3);
    CHECK(run({}).code == 3);
    CHECK(run({"bp", write_model("two2.json", two_node_model(1, 2, 3, 4)), "--tol", "1e-300", "--max-sweeps", "3"})
              .code == 2);
    CHECK(run({"bp", write_model("two3.json", two_node_model(1, 2, 3, 4)), "--damping", "1.5"}).code == 3);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("reports are reproducible and mirrored to --json") {
    const std::string path = write_model("rep.json", triangle_model(1.5));
    const fs::path out = fs::temp_directory_path() / "gaugepf_unit" / "rep_out.json";
    const Run a = run({"bp", path, "--seed", "5", "--json", out.string()});
    const Run b = run({"bp", path, "--seed", "5"});
    CHECK(a.out == b.out);
    std::ifstream in(out);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == a.out);
  }
}
