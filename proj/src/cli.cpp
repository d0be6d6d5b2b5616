#include "tnd/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "tnd/experiment.hpp"
#include "tnd/extensions.hpp"
#include "tnd/generators.hpp"
#include "tnd/io.hpp"
#include "tnd/kcore.hpp"

namespace tnd::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Usage errors detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::stabilized:
      return kOk;
    case Verdict::cycle:
      return kCycle;
    case Verdict::budget:
      return kBudget;
  }
  return kBudget;
}

void print_verdict(std::ostream& out, const RunTrace& trace) {
  out << "verdict " << to_string(trace.verdict);
  if (trace.verdict == Verdict::stabilized) {
    out << " at round " << trace.verdict_round;
    if (trace.heuristic) out << " (quiet-streak heuristic)";
  } else if (trace.verdict == Verdict::cycle) {
    out << " from round " << trace.verdict_round << " period " << trace.period;
  }
  out << "\nrounds " << trace.rounds_executed << ", changing rounds " << trace.changing_rounds
      << "\nfinal fingerprint " << trace.final_fingerprint.hex() << '\n';
}

void print_nodes(std::ostream& out, const std::string& label, const std::vector<NodeId>& nodes) {
  out << label << " (" << nodes.size() << "):";
  for (NodeId u : nodes) out << ' ' << u;
  out << '\n';
}

struct Report {
  bool ok = true;
  std::vector<std::string> lines;
  void fail(std::string s) {
    ok = false;
    lines.push_back("FAIL " + std::move(s));
  }
  void pass(std::string s) { lines.push_back("ok   " + std::move(s)); }
};

// ---- verify ----------------------------------------------------------------

struct Artifacts {
  TraceFile trace;
  ExperimentConfig config;
  Experiment experiment;
  DynGraph final_graph;
};

Artifacts load_artifacts(const std::string& trace_path, const std::string& graph_path, Report& rep) {
  Artifacts a;
  a.trace = read_trace_file(trace_path);
  if (!a.trace.header.contains("config")) throw UsageError(trace_path + ": header has no config");
  a.config = parse_config(a.trace.header.at("config"), fs::path(trace_path).parent_path().string());
  a.experiment = build_experiment(a.config);
  a.final_graph = read_edge_list_file(graph_path);

  const std::string initial = a.experiment.initial.digest().hex();
  if (initial == a.trace.header.value("initial_fingerprint", "")) {
    rep.pass("initial graph rebuilt from the recorded config matches the trace");
  } else {
    rep.fail("initial graph rebuilt from the recorded config has fingerprint " + initial +
             ", trace says " + a.trace.header.value("initial_fingerprint", "?"));
  }
  const std::string final_fp = a.final_graph.digest().hex();
  if (final_fp == a.trace.verdict.value("final_fingerprint", "")) {
    rep.pass("final graph file matches the trace");
  } else {
    rep.fail("final graph file has fingerprint " + final_fp + ", trace says " +
             a.trace.verdict.value("final_fingerprint", "?"));
  }
  if (a.final_graph.node_count() != a.experiment.initial.node_count()) {
    throw UsageError("final graph has " + std::to_string(a.final_graph.node_count()) +
                     " nodes, the run had " + std::to_string(a.experiment.initial.node_count()));
  }
  return a;
}

void verify_kcore(const Artifacts& a, Report& rep) {
  const double alpha = a.config.potential.alpha;
  const double beta = a.config.potential.beta;
  const std::size_t n = a.experiment.initial.node_count();
  if (alpha < 0 || alpha > double(n) - 1 || beta <= double(n) - 1) {
    throw UsageError("kcore mode needs alpha <= n-1 < beta, the run had alpha " +
                     std::to_string(alpha) + ", beta " + std::to_string(beta) + ", n " + std::to_string(n));
  }
  if (a.trace.verdict.value("verdict", "") != "stabilized") {
    rep.fail("run did not stabilize (verdict " + a.trace.verdict.value("verdict", "?") + ")");
  }
  // d < alpha iff d < ceil(alpha) for integer degrees
  const auto k = static_cast<std::size_t>(std::ceil(alpha));
  const KcoreReport kr = verify_kcore_run(a.final_graph, a.experiment.initial, k);
  if (kr.ok) {
    rep.pass("final graph is the " + std::to_string(k) + "-core of G(0) with its original edges");
  } else {
    rep.fail(kr.summary());
  }
  const std::uint64_t changing = a.trace.verdict.value("changing_rounds", std::uint64_t{0});
  const std::size_t m = a.experiment.initial.edge_count();
  if (changing <= m) {
    rep.pass("changing rounds " + std::to_string(changing) + " <= m = " + std::to_string(m));
  } else {
    rep.fail("changing rounds " + std::to_string(changing) + " > m = " + std::to_string(m));
  }
}

void verify_rule110(const Artifacts& a, Report& rep) {
  const rule110::CellAssembly& asmb = *a.experiment.assembly;
  const bool merged = a.config.potential.name == "rule110_merged";
  const std::uint64_t rounds = a.trace.verdict.value("rounds_executed", std::uint64_t{0});
  const bool integer = merged || rounds % 2 == 0;
  const std::uint64_t steps = merged ? rounds : rounds / 2;

  const auto sr = rule110::check_structure(asmb, a.final_graph,
                                           integer ? rule110::Parity::integer : rule110::Parity::half);
  if (sr.ok) {
    rep.pass(std::string("gadget structure at ") + (integer ? "integer" : "half") + " parity");
  } else {
    rep.fail(std::to_string(sr.violation_count) + " structure violations");
    for (const auto& v : sr.violations) rep.lines.push_back("     " + v);
  }
  if (!integer) {
    rep.lines.push_back("     half step: cell values are not defined [" +
                        rule110::pcg_diagnostic(asmb, a.final_graph) + "]");
    return;
  }
  rule110::Tape expected = asmb.tape;
  for (std::uint64_t s = 0; s < steps; ++s) expected = rule110::reference_step(expected);
  const auto got = rule110::extract_tape(asmb, a.final_graph);
  if (!got) {
    rep.fail("inconsistent cell gadgets [" + rule110::pcg_diagnostic(asmb, a.final_graph) + "]");
  } else if (*got != expected) {
    rep.fail("step " + std::to_string(steps) + ": extracted " + got->str() + ", reference " + expected.str());
  } else {
    rep.pass("step " + std::to_string(steps) + ": extracted tape " + got->str() + " equals the reference");
  }
}

void verify_degree_props(const Artifacts& a, Report& rep) {
  if (a.config.scheduler.name != "complete") {
    throw UsageError("degree-props mode needs a complete-scheduler run, got '" + a.config.scheduler.name + "'");
  }
  std::vector<DynGraph> graphs{a.experiment.initial};
  std::size_t ci = 0;
  const std::uint64_t rounds = a.trace.verdict.value("rounds_executed", std::uint64_t{0});
  for (std::uint64_t t = 0; t < rounds; ++t) {
    DynGraph next = graphs.back();
    while (ci < a.trace.rounds.size() && a.trace.rounds[ci].t < t) ++ci;
    if (ci < a.trace.rounds.size() && a.trace.rounds[ci].t == t) apply_delta(next, a.trace.rounds[ci].delta);
    graphs.push_back(std::move(next));
  }
  if (graphs.back() == a.final_graph) {
    rep.pass("replaying " + std::to_string(rounds) + " rounds of deltas reproduces the final graph");
  } else {
    rep.fail("replayed deltas do not reproduce the final graph");
  }
  const PropertyReport pr = check_degree_properties(graphs);
  if (pr.ok) {
    rep.pass("P1-P4 and L4 hold for t >= 1 (" + std::to_string(pr.rounds_checked) + " rounds)");
  } else {
    rep.fail(std::to_string(pr.violations.size()) + " degree-property violations");
    for (const auto& v : pr.violations) rep.lines.push_back("     " + v);
  }
  const DegreeClasses c0 = degree_classes(graphs.front());
  if (auto last = a.trace.verdict.find("last_change_round");
      last != a.trace.verdict.end() && !last->is_null()) {
    const std::uint64_t lc = last->get<std::uint64_t>();
    if (lc <= c0.count() + 1) {
      rep.pass("last change at round " + std::to_string(lc) + " <= |G(0)|+1 = " + std::to_string(c0.count() + 1));
    } else {
      rep.fail("last change at round " + std::to_string(lc) + " > |G(0)|+1 = " + std::to_string(c0.count() + 1));
    }
  }
}

int do_verify(const std::string& mode, const std::string& trace_path, const std::string& graph_path,
              std::ostream& out) {
  Report rep;
  const Artifacts a = load_artifacts(trace_path, graph_path, rep);
  const std::string& pot = a.config.potential.name;
  if (mode == "kcore") {
    if (pot != "min_degree") throw UsageError("kcore mode needs a min_degree run, got '" + pot + "'");
    verify_kcore(a, rep);
  } else if (mode == "rule110") {
    if (!a.experiment.assembly) throw UsageError("rule110 mode needs a rule110-assembly run");
    verify_rule110(a, rep);
  } else {
    if (pot != "proper_degree" && pot != "min_degree") {
      throw UsageError("degree-props mode needs a proper_degree or min_degree run, got '" + pot + "'");
    }
    verify_degree_props(a, rep);
  }
  for (const auto& l : rep.lines) out << l << '\n';
  out << (rep.ok ? "verified" : "verification failed") << '\n';
  return rep.ok ? kOk : kVerifyFailed;
}

// ---- run -------------------------------------------------------------------

int do_run(const std::string& config_path, const std::string& trace_override,
           const std::string& graph_override, std::ostream& out) {
  ExperimentConfig config = load_config(config_path);
  if (!trace_override.empty()) config.trace_path = fs::absolute(trace_override).string();
  if (!graph_override.empty()) config.final_graph_path = fs::absolute(graph_override).string();
  if (!config.verify.empty() && (config.trace_path.empty() || config.final_graph_path.empty())) {
    throw ConfigError("verify: needs output.trace and output.final_graph");
  }
  const Experiment e = build_experiment(config);
  const RunResult r = run(make_run_config(config, e));

  out << "potential " << r.trace.potential << ", scheduler " << r.trace.scheduler << ", n "
      << r.trace.node_count << ", m " << e.initial.edge_count() << " -> " << r.final_graph.edge_count()
      << '\n';
  print_verdict(out, r.trace);
  if (!config.trace_path.empty()) {
    write_trace_file(config.trace_path, r.trace, config.resolved);
    out << "trace " << config.trace_path << '\n';
  }
  if (!config.final_graph_path.empty()) {
    write_edge_list_file(config.final_graph_path, r.final_graph);
    out << "final graph " << config.final_graph_path << '\n';
  }
  if (!config.verify.empty()) {
    const int v = do_verify(config.verify, config.trace_path, config.final_graph_path, out);
    if (v != kOk) return v;
  }
  return verdict_code(r.trace.verdict);
}

// ---- kcore -----------------------------------------------------------------

int do_kcore(const std::string& graph_path, std::size_t k, std::ostream& out) {
  const DynGraph g = read_edge_list_file(graph_path);
  const CoreDecomposition d = peel(g, k);
  out << "n " << g.node_count() << ", m " << g.edge_count() << ", k " << k << '\n';
  print_nodes(out, "core", d.core_nodes);
  print_nodes(out, "crust", d.crust_nodes);
  return kOk;
}

// ---- rule110 ---------------------------------------------------------------

struct Rule110Args {
  std::string tape;
  std::uint64_t steps = 1;
  bool merged = false;
  bool no_prune = false;
  bool literal = false;
  std::string dump;
  std::string trace;
};

int do_rule110(const Rule110Args& args, std::ostream& out) {
  const rule110::Tape tape = rule110::Tape::parse(args.tape);
  rule110::SimulationOptions opt;
  opt.prune = !args.no_prune;
  opt.literal_ring = args.literal;

  if (!args.dump.empty()) {
    const auto w = static_cast<std::uint32_t>(tape.width());
    const std::uint32_t ring = args.literal ? w : rule110::cover_width(w);
    rule110::Tape ring_tape;
    for (std::uint32_t i = 0; i < ring; ++i) ring_tape.cells.push_back(tape.cells[i % w]);
    const rule110::CellAssembly a = rule110::build_assembly(ring_tape);
    write_edge_list_file(args.dump, a.graph);
    write_labels_file(args.dump + ".labels", a.map);
    out << "assembly " << args.dump << " (" << a.graph.node_count() << " nodes, " << a.graph.edge_count()
        << " edges), labels " << args.dump << ".labels\n";
  }

  const rule110::SimulationResult r = rule110::simulate(tape, args.steps, args.merged, opt);
  out << "ring width " << r.ring_width << (args.merged ? ", merged" : ", unmerged") << '\n';
  for (std::size_t s = 0; s < r.tapes.size(); ++s) {
    out << "step " << s << "  " << r.tapes[s].str() << "  reference " << r.reference[s].str() << '\n';
  }
  for (const auto& f : r.failures) out << "FAIL " << f << '\n';
  if (!args.trace.empty()) {
    json cfg{{"graph", {{"source", "rule110-assembly"}, {"tape", tape.str()}, {"cover", !args.literal}}},
             {"potential", {{"name", args.merged ? "rule110_merged" : "rule110"}, {"alpha", opt.beta}, {"beta", opt.beta}}},
             {"scheduler", {{"name", "complete"}}},
             {"run", {{"max_rounds", std::max<std::uint64_t>(1, args.steps * (args.merged ? 1 : 2))},
                      {"stop_mode", "budget"}, {"prune", opt.prune}}}};
    write_trace_file(args.trace, r.trace, cfg);
    out << "trace " << args.trace << '\n';
  }
  const bool ok = r.fidelity_ok && r.structure_ok;
  out << (ok ? "fidelity ok" : "fidelity FAILED") << '\n';
  return ok ? kOk : kVerifyFailed;
}

// ---- star / social ---------------------------------------------------------

struct GraphArgs {
  std::string file;
  std::size_t n = 20;
  double p = 0.1;
  std::uint64_t seed = 1;
};

void add_graph_options(CLI::App* cmd, GraphArgs& g) {
  cmd->add_option("--graph", g.file, "edge-list file (otherwise a random graph)")->check(CLI::ExistingFile);
  cmd->add_option("--n", g.n, "random graph: node count")->capture_default_str();
  cmd->add_option("--p", g.p, "random graph: edge probability")->capture_default_str();
  cmd->add_option("--graph-seed", g.seed, "random graph: seed")->capture_default_str();
}

struct StarArgs {
  GraphArgs graph;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1000000;
  std::string trace;
  std::string final_graph;
};

int do_star(const StarArgs& args, std::ostream& out) {
  DynGraph g0;
  if (!args.graph.file.empty()) {
    g0 = read_edge_list_file(args.graph.file);
  } else {
    Rng rng(args.graph.seed);
    g0 = random_connected(args.graph.n, args.graph.p, rng);
  }
  auto sched = uniform_random_scheduler(g0.node_count());
  const auto protocol = star_protocol();
  GeneralRunConfig cfg;
  cfg.budget = args.budget;
  cfg.seed = args.seed;
  const GeneralRunResult r = run_general(g0, *protocol, *sched, cfg);
  out << "n " << g0.node_count() << ", m " << g0.edge_count() << ", components " << component_count(g0) << '\n';
  out << (r.reached ? "spanning star reached" : "no spanning star") << " after " << r.trace.rounds_executed
      << " rounds\nmerges " << r.merges << ", new leaves " << r.new_leaves << ", idle " << r.idle << '\n';
  for (const auto& v : r.progress_violations) out << "FAIL " << v << '\n';
  if (!args.trace.empty()) {
    json cfg_json{{"protocol", "star"}, {"budget", args.budget}, {"seed", args.seed}};
    write_trace_file(args.trace, r.trace, cfg_json);
  }
  if (!args.final_graph.empty()) write_edge_list_file(args.final_graph, r.final_graph);
  if (!r.progress_violations.empty()) return kVerifyFailed;
  return r.reached ? kOk : kBudget;
}

struct SocialArgs {
  GraphArgs graph;
  std::string profile;
  std::size_t gamma = 2;
  double alpha = 0;
  double beta = 0;
  std::uint64_t seed = 0;
  std::uint64_t max_rounds = 10000;
  std::string trace;
  std::string final_graph;
};

int do_social(const SocialArgs& args, std::ostream& out) {
  DynGraph g0;
  if (!args.graph.file.empty()) {
    g0 = read_edge_list_file(args.graph.file);
  } else {
    Rng rng(args.graph.seed);
    g0 = gnp(args.graph.n, args.graph.p, rng);
  }
  SocialProfile profile = read_profile_file(args.profile);
  if (profile.size() != g0.node_count()) {
    throw ConfigError("--profile: profile has " + std::to_string(profile.size()) + " nodes, graph " +
                      std::to_string(g0.node_count()));
  }
  if (args.alpha > args.beta) throw ConfigError("--alpha: must not exceed --beta");
  RunConfig cfg(g0, social_potential(profile, args.alpha, args.beta), social_scheduler(profile, args.gamma));
  cfg.max_rounds = args.max_rounds;
  cfg.seed = args.seed;
  cfg.trace_level = TraceLevel::changes;
  const RunResult r = run(cfg);

  std::size_t enemy_edges = 0;
  for (NodeId u = 0; u < g0.node_count(); ++u) {
    for (NodeId w : r.final_graph.neighbors(u)) {
      if (u < w && profile.is_enemy(u, w) && !g0.has_edge(u, w)) ++enemy_edges;
    }
  }
  out << "n " << g0.node_count() << ", m " << g0.edge_count() << " -> " << r.final_graph.edge_count() << '\n';
  print_verdict(out, r.trace);
  out << "new edges between enemies " << enemy_edges << '\n';
  if (!args.trace.empty()) {
    json cfg_json{{"protocol", "social"}, {"alpha", args.alpha}, {"beta", args.beta}, {"gamma", args.gamma},
                  {"profile", fs::absolute(args.profile).string()}, {"seed", args.seed}};
    write_trace_file(args.trace, r.trace, cfg_json);
  }
  if (!args.final_graph.empty()) write_edge_list_file(args.final_graph, r.final_graph);
  if (enemy_edges > 0) return kVerifyFailed;
  return verdict_code(r.trace.verdict);
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Threshold network dynamics: runs, verification and gadget simulation", "tnd"};
  app.require_subcommand(1);

  std::string config_path, trace_out, graph_out;
  auto* run_cmd = app.add_subcommand("run", "execute a config file, write trace and final graph");
  run_cmd->add_option("config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--trace", trace_out, "trace output (overrides output.trace)");
  run_cmd->add_option("--final-graph", graph_out, "final graph output (overrides output.final_graph)");

  std::string mode, trace_path, graph_path;
  auto* verify_cmd = app.add_subcommand("verify", "check a trace and final graph produced by run");
  verify_cmd->add_option("--mode", mode, "kcore, rule110 or degree-props")
      ->required()
      ->check(CLI::IsMember({"kcore", "rule110", "degree-props"}));
  verify_cmd->add_option("--trace", trace_path, "trace file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--graph", graph_path, "final graph file")->required()->check(CLI::ExistingFile);

  std::string kcore_graph;
  std::size_t k = 0;
  auto* kcore_cmd = app.add_subcommand("kcore", "print the k-core and crust of a graph");
  kcore_cmd->add_option("--graph", kcore_graph, "edge-list file")->required()->check(CLI::ExistingFile);
  kcore_cmd->add_option("--k", k, "core order")->required();

  Rule110Args r110;
  auto* r110_cmd = app.add_subcommand("rule110", "simulate a cyclic rule-110 tape with the gadget graph");
  r110_cmd->add_option("--tape", r110.tape, "initial cells, e.g. 0110")->required();
  r110_cmd->add_option("--steps", r110.steps, "CA steps")->required();
  r110_cmd->add_flag("--merged", r110.merged, "one round per CA step with the radius-3 potential");
  r110_cmd->add_flag("--no-prune", r110.no_prune, "evaluate every pair every round");
  r110_cmd->add_flag("--literal-ring", r110.literal,
                     "use a ring of exactly the tape width instead of a covering ring of >= 4 cells");
  r110_cmd->add_option("--dump-assembly", r110.dump, "write G(0) as an edge list plus a .labels file");
  r110_cmd->add_option("--trace", r110.trace, "trace output");

  StarArgs star;
  auto* star_cmd = app.add_subcommand("star", "spanning-star protocol under the uniform scheduler");
  add_graph_options(star_cmd, star.graph);
  star_cmd->add_option("--seed", star.seed, "run seed")->capture_default_str();
  star_cmd->add_option("--budget", star.budget, "round budget")->capture_default_str();
  star_cmd->add_option("--trace", star.trace, "trace output");
  star_cmd->add_option("--final-graph", star.final_graph, "final graph output");

  SocialArgs social;
  auto* social_cmd = app.add_subcommand("social", "niceness potential under the social scheduler");
  add_graph_options(social_cmd, social.graph);
  social_cmd->add_option("--profile", social.profile, "profile file")->required()->check(CLI::ExistingFile);
  social_cmd->add_option("--gamma", social.gamma, "max common neighbors for a re-evaluated edge")
      ->capture_default_str();
  social_cmd->add_option("--alpha", social.alpha, "removal threshold")->required();
  social_cmd->add_option("--beta", social.beta, "creation threshold")->required();
  social_cmd->add_option("--seed", social.seed, "run seed")->capture_default_str();
  social_cmd->add_option("--max-rounds", social.max_rounds, "round budget")->capture_default_str();
  social_cmd->add_option("--trace", social.trace, "trace output");
  social_cmd->add_option("--final-graph", social.final_graph, "final graph output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return do_run(config_path, trace_out, graph_out, out);
    if (*verify_cmd) return do_verify(mode, trace_path, graph_path, out);
    if (*kcore_cmd) return do_kcore(kcore_graph, k, out);
    if (*r110_cmd) return do_rule110(r110, out);
    if (*star_cmd) return do_star(star, out);
    if (*social_cmd) return do_social(social, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "malformed record: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace tnd::cli
