#include "gaugepf/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cli/verify.hpp"
#include "gaugepf/bp.hpp"
#include "gaugepf/errors.hpp"
#include "gaugepf/loops.hpp"
#include "gaugepf/model_io.hpp"
#include "gaugepf/random_models.hpp"

namespace gaugepf::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string model_path;
  std::string json_path;
  SolverConfig solver;
  std::string order = "normal-first";
  std::string mode = "exact";
  std::size_t random_models = 0;
  std::size_t random_edges = 6;
  std::string mutate;
};

struct Loaded {
  MultiGM model;
  std::string digest;
};

Loaded load(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return {parse_model(text), fnv1a_hex(text)};
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

double rel_error(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Json config_bits(const Config& c, const MultiGraph& g) {
  Json out = Json::object();
  for (std::size_t k = 0; k < c.size(); ++k) out[g.edges()[k].name] = static_cast<int>(c[k]);
  return out;
}

Json solver_json(const SolverConfig& cfg) {
  return {{"damping", cfg.damping},       {"tolerance", cfg.tolerance}, {"max_sweeps", cfg.max_sweeps},
          {"restarts", cfg.restarts},     {"seed", cfg.seed},           {"soften", cfg.soften_eps}};
}

Json header(const char* command, const std::string& digest, const Options& opts) {
  Json r;
  r["command"] = command;
  r["input_digest"] = digest;
  r["seed"] = opts.solver.seed;
  return r;
}

Json gauge_json(const MultiGraph& g, const GaugeVector& x) {
  Json out = Json::array();
  for (const Edge& e : g.edges()) {
    out.push_back({{"edge", e.name},
                   {"x_plus", x[{e.id, Polarity::Plus}]},
                   {"x_minus", x[{e.id, Polarity::Minus}]}});
  }
  return out;
}

struct Outcome {
  Json report;
  int code = kSuccess;
};

Outcome cmd_exact(const Options& opts) {
  const Loaded in = load(opts.model_path);
  const MultiGM& m = in.model;
  const double z = partition_exact(m);
  const MapResult map = map_energy_exact(m);
  Json r = header("exact", in.digest, opts);
  r["results"] = {{"num_nodes", m.graph().num_nodes()},
                  {"num_edges", m.graph().num_edges()},
                  {"Z", z},
                  {"log_Z", std::log(z)},
                  {"map_energy", map.energy},
                  {"argmax", config_bits(map.argmax, m.graph())}};
  return {std::move(r), kSuccess};
}

Outcome cmd_bp(const Options& opts) {
  const Loaded in = load(opts.model_path);
  const MultiGM m = solver_model(in.model, opts.solver);
  const MultiGraph& g = m.graph();
  const BPGauge bp = solve_bp(m, opts.solver);

  Json residuals = Json::array();
  const auto res = bp_residual(m, bp.x);
  std::size_t k = 0;
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    for (const DirectedEdgeId& d : g.incidence_at(n)) {
      residuals.push_back({{"node", g.nodes()[n].name}, {"directed_edge", directed_edge_name(g, d)}, {"value", res[k++]}});
    }
  }
  const Beliefs beliefs = marginals_from_gauge(m, bp.x);
  Json beta = Json::object();
  for (std::size_t e = 0; e < g.num_edges(); ++e) beta[g.edges()[e].name] = beliefs.edge[e];

  Json results = {{"Z_vbp", bp.z},
                  {"log_Z_vbp", bp.log_z},
                  {"converged", bp.converged},
                  {"softened", !in.model.soft()},
                  {"max_residual", bp.residual},
                  {"gauge", gauge_json(g, bp.x)},
                  {"residuals", std::move(residuals)},
                  {"beta", std::move(beta)},
                  {"interior_margin", interior_margin(beliefs)},
                  {"stationary_values", bp.stationary_values}};
  if (bp.converged) results["bethe_free_energy"] = bethe_free_energy(m, beliefs);
  if (g.num_edges() <= kEnumerationGuard) {
    const double z = partition_exact(m);
    results["Z"] = z;
    results["ratio"] = bp.z / z;
    results["exact"] = rel_error(bp.z, z) <= 1e-6;
  }

  Json r = header("bp", in.digest, opts);
  r["results"] = std::move(results);
  r["solver"] = solver_json(opts.solver);
  r["solver"]["sweeps"] = bp.sweeps;
  r["solver"]["converged_restarts"] = bp.converged_restarts;
  return {std::move(r), bp.converged ? kSuccess : kNonConvergence};
}

std::vector<EdgeId> resolve_order(const MultiGraph& g, const std::string& text) {
  std::vector<EdgeId> order;
  if (text == "normal-first") return normal_first_order(g);
  if (text == "self-first") return self_first_order(g);
  if (text == "ids") {
    for (const Edge& e : g.edges()) order.push_back(e.id);
    return order;
  }
  std::stringstream ss(text);
  std::string name;
  while (std::getline(ss, name, ',')) {
    auto it = std::find_if(g.edges().begin(), g.edges().end(), [&](const Edge& e) { return e.name == name; });
    if (it == g.edges().end()) throw InputError("order names unknown edge '" + name + "'");
    order.push_back(it->id);
  }
  if (!is_elimination_order(g, order)) throw InputError("order must list every edge exactly once");
  return order;
}

Outcome cmd_contract(const Options& opts) {
  const Loaded in = load(opts.model_path);
  const MultiGraph& g = in.model.graph();
  const std::vector<EdgeId> order = resolve_order(g, opts.order);
  Json names = Json::array();
  for (EdgeId e : order) names.push_back(g.edge(e).name);

  Json r = header("contract", in.digest, opts);
  r["mode"] = opts.mode;
  r["order"] = names;

  if (opts.mode == "exact") {
    MultiGM stage = in.model;
    const double z = partition_exact(stage);
    Json steps = Json::array();
    bool constant = true;
    for (std::size_t step = 0; step <= order.size(); ++step) {
      if (step > 0) stage = contract_model(stage, order[step - 1]);
      const double zs = partition_exact(stage);
      const bool same = rel_error(zs, z) <= 1e-10;
      constant = constant && same;
      steps.push_back({{"step", step},
                       {"eliminated", step > 0 ? Json(g.edge(order[step - 1]).name) : Json(nullptr)},
                       {"num_edges", stage.graph().num_edges()},
                       {"num_self_edges", stage.graph().num_self_edges()},
                       {"Z", zs}});
    }
    r["results"] = {{"Z", z}, {"constant", constant}, {"steps", std::move(steps)}};
    return {std::move(r), constant ? kSuccess : kInvariantFailure};
  }
  if (opts.mode != "bp-sequence") throw InputError("unknown mode '" + opts.mode + "'; use exact or bp-sequence");

  const SequenceReport seq = bp_contract_sequence(in.model, order, opts.solver);
  Json steps = Json::array();
  for (const SequenceEntry& e : seq.entries) {
    steps.push_back({{"step", e.step},
                     {"eliminated", e.eliminated ? Json(g.edge(*e.eliminated).name) : Json(nullptr)},
                     {"num_edges", e.num_edges},
                     {"num_self_edges", e.num_self_edges},
                     {"Z_vbp", e.z_vbp},
                     {"converged", e.converged}});
  }
  const double first = seq.entries.front().z_vbp;
  const double last = seq.entries.back().z_vbp;
  r["results"] = {{"Z", seq.z_exact},
                  {"softened", seq.softened},
                  {"monotone", seq.monotone()},
                  {"decreases", seq.decreases},
                  {"lower_bound", first <= seq.z_exact * (1.0 + 1e-9)},
                  {"final_equals_Z", rel_error(last, seq.z_exact) <= 1e-9},
                  {"steps", std::move(steps)}};
  r["solver"] = solver_json(opts.solver);
  return {std::move(r), seq.all_converged() ? kSuccess : kNonConvergence};
}

Outcome cmd_loops(const Options& opts) {
  const Loaded in = load(opts.model_path);
  const MultiGM m = solver_model(in.model, opts.solver);
  const MultiGraph& g = m.graph();
  const auto loops_found = enumerate_generalized_loops(g);
  const BPGauge bp = solve_bp(m, opts.solver);
  Json r = header("loops", in.digest, opts);
  r["solver"] = solver_json(opts.solver);
  if (!bp.converged) {
    r["results"] = {{"converged", false}, {"max_residual", bp.residual}, {"num_loops", loops_found.size()}};
    return {std::move(r), kNonConvergence};
  }

  std::vector<LoopTerm> series = loop_series(m, bp.x);
  double sum = 0.0;
  for (const LoopTerm& t : series) sum += t.term;
  std::stable_sort(series.begin(), series.end(),
                   [](const LoopTerm& a, const LoopTerm& b) { return std::abs(a.term) > std::abs(b.term); });
  Json terms = Json::array();
  for (const LoopTerm& t : series) {
    Json edges = Json::array();
    for (std::size_t k = 0; k < t.loop.size(); ++k) {
      if (t.loop[k]) edges.push_back(g.edges()[k].name);
    }
    terms.push_back({{"edges", std::move(edges)}, {"term", t.term}});
  }
  const double z = partition_exact(m);
  const double err = rel_error(sum, z);
  r["results"] = {{"converged", true},
                  {"softened", !in.model.soft()},
                  {"num_loops", series.size()},
                  {"Z_vbp", bp.z},
                  {"sum", sum},
                  {"Z", z},
                  {"relative_error", err},
                  {"terms", std::move(terms)}};
  return {std::move(r), err <= 1e-8 ? kSuccess : kInvariantFailure};
}

Outcome cmd_verify(const Options& opts) {
  std::vector<MultiGM> models;
  std::string digest;
  if (!opts.model_path.empty()) {
    Loaded in = load(opts.model_path);
    models.push_back(std::move(in.model));
    digest = in.digest;
  } else if (opts.random_models > 0) {
    std::mt19937_64 rng(opts.solver.seed);
    RandomModelOptions ro;
    ro.num_edges = opts.random_edges;
    for (std::size_t i = 0; i < opts.random_models; ++i) models.push_back(random_soft_model(rng, ro));
    digest = fnv1a_hex("random:" + std::to_string(opts.random_models) + ":" + std::to_string(opts.random_edges) +
                       ":" + std::to_string(opts.solver.seed));
  } else {
    throw InputError("verify needs a model file or --random N");
  }
  if (!opts.mutate.empty() && opts.mutate != "gauge-sign") {
    throw InputError("unknown mutation '" + opts.mutate + "'");
  }

  VerifyOptions vo;
  vo.solver = opts.solver;
  vo.seed = opts.solver.seed;
  vo.mutate_gauge_sign = opts.mutate == "gauge-sign";
  const VerifyOutcome outcome = verify_models(models, vo);

  Json r = header("verify", digest, opts);
  if (opts.random_models > 0 && opts.model_path.empty()) {
    r["random"] = {{"models", opts.random_models}, {"edges", opts.random_edges}};
  }
  r["results"] = to_json(outcome);
  r["solver"] = solver_json(opts.solver);

  const bool only_convergence =
      std::all_of(outcome.invariants.begin(), outcome.invariants.end(),
                  [](const InvariantTally& t) { return t.passed() || t.name == "bp_converged"; });
  int code = kSuccess;
  if (!outcome.all_passed()) code = only_convergence ? kNonConvergence : kInvariantFailure;
  return {std::move(r), code};
}

void add_solver_flags(CLI::App* sub, Options& opts) {
  sub->add_option("--tol", opts.solver.tolerance, "Residual tolerance")->capture_default_str();
  sub->add_option("--damping", opts.solver.damping, "Weight on the previous iterate, in [0, 1)")
      ->capture_default_str();
  sub->add_option("--restarts", opts.solver.restarts, "Random restarts")->capture_default_str();
  sub->add_option("--max-sweeps", opts.solver.max_sweeps, "Sweep limit per restart")->capture_default_str();
  sub->add_option("--seed", opts.solver.seed, "Random seed")->capture_default_str();
  sub->add_option("--soften", opts.solver.soften_eps, "Relative softening for hard models")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gauge transformations and belief propagation on multi-graph graphical models", "gaugepf"};
  app.require_subcommand(1);
  Options opts;

  struct Command {
    const char* name;
    const char* help;
    Outcome (*fn)(const Options&);
  };
  const Command commands[] = {
      {"exact", "Partition function and MAP by enumeration", cmd_exact},
      {"bp", "Variational BP estimate of the partition function", cmd_bp},
      {"contract", "Edge elimination, exact or with BP at every stage", cmd_contract},
      {"loops", "Loop series around the BP gauge", cmd_loops},
      {"verify", "Invariant suite on a model file or random models", cmd_verify},
  };
  std::vector<CLI::App*> subs;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("model", opts.model_path, "Model JSON file");
    sub->add_option("--json", opts.json_path, "Also write the report to this file");
    add_solver_flags(sub, opts);
    subs.push_back(sub);
  }
  for (CLI::App* sub : subs) {
    if (sub->get_name() != "verify") sub->get_option("model")->required();
  }
  subs[2]->add_option("--order", opts.order, "normal-first, self-first, ids, or a comma-separated edge list")
      ->capture_default_str();
  subs[2]->add_option("--mode", opts.mode, "exact or bp-sequence")->capture_default_str();
  subs[4]->add_option("--random", opts.random_models, "Number of random soft models");
  subs[4]->add_option("--edges", opts.random_edges, "Edges per random model")->capture_default_str();
  subs[4]->add_option("--mutate", opts.mutate)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "gaugepf: " << e.what() << "\n";
    return kInputError;
  }

  std::size_t which = 0;
  while (!subs[which]->parsed()) ++which;

  Outcome outcome;
  try {
    outcome = commands[which].fn(opts);
  } catch (const GuardError& e) {
    err << "gaugepf: " << e.what() << "\n";
    return kInputError;
  } catch (const ConvergenceError& e) {
    err << "gaugepf: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const Error& e) {
    err << "gaugepf: " << e.what() << "\n";
    return kInputError;
  }

  const std::string text = outcome.report.dump(2) + "\n";
  out << text;
  if (!opts.json_path.empty()) {
    std::ofstream file(opts.json_path, std::ios::binary);
    if (!file || !(file << text)) {
      err << "gaugepf: cannot write '" << opts.json_path << "'\n";
      return kInputError;
    }
  }
  return outcome.code;
}

}  // namespace gaugepf::cli
