#include "tnd/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "tnd/extensions.hpp"
#include "tnd/generators.hpp"
#include "tnd/io.hpp"

namespace tnd {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Typed access to one config object; remembers the keys it was asked for so
// that leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& doc, std::string name) : name_(std::move(name)) {
    if (!doc.contains(name_)) {
      obj_ = json::object();
      return;
    }
    obj_ = doc.at(name_);
    if (!obj_.is_object()) throw ConfigError(name_ + ": expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  std::string field(const std::string& key) const { return name_ + "." + key; }

  template <typename T>
  T get(const std::string& key, T fallback) {
    seen_.insert(key);
    if (!obj_.contains(key) || obj_.at(key).is_null()) return fallback;
    return convert<T>(key);
  }

  template <typename T>
  T require(const std::string& key) {
    seen_.insert(key);
    if (!obj_.contains(key) || obj_.at(key).is_null()) throw ConfigError(field(key) + ": required");
    return convert<T>(key);
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) throw ConfigError(field(key) + ": unknown key");
    }
  }

 private:
  template <typename T>
  T convert(const std::string& key) const {
    const json& v = obj_.at(key);
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(field(key) + ": expected true or false");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(field(key) + ": expected a string");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError(field(key) + ": expected a number");
    } else {
      if (!v.is_number_integer() || (v.is_number_integer() && v.get<std::int64_t>() < 0 &&
                                      !v.is_number_unsigned())) {
        throw ConfigError(field(key) + ": expected a nonnegative integer");
      }
    }
    return v.get<T>();
  }

  std::string name_;
  json obj_;
  std::set<std::string> seen_;
};

std::string resolve(const std::string& base_dir, const std::string& field, const std::string& p,
                    bool must_exist) {
  if (p.empty()) throw ConfigError(field + ": empty path");
  fs::path path(p);
  if (path.is_relative()) path = fs::path(base_dir) / path;
  path = path.lexically_normal();
  if (must_exist && !fs::exists(path)) {
    throw ConfigError(field + ": file '" + path.string() + "' does not exist");
  }
  return path.string();
}

const std::set<std::string> kSources{"file", "gnp", "cycle", "path", "star", "complete",
                                     "rule110-assembly"};
const std::set<std::string> kPotentials{"min_degree", "proper_degree", "degree_like_niceness",
                                        "community", "rule110", "rule110_merged"};
const std::set<std::string> kSchedulers{"complete", "current_edges", "uniform",
                                        "round_robin", "scripted", "social"};

std::string joined(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ", ") + x;
  return out;
}

bool is_rule110(const std::string& potential) {
  return potential == "rule110" || potential == "rule110_merged";
}

}  // namespace

ExperimentConfig parse_config(const json& doc, const std::string& base_dir) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    static const std::set<std::string> top{"graph", "potential", "scheduler", "run", "output", "verify"};
    if (!top.count(key)) throw ConfigError(key + ": unknown section");
  }
  ExperimentConfig c;

  Section g(doc, "graph");
  c.graph.source = g.require<std::string>("source");
  if (!kSources.count(c.graph.source)) {
    throw ConfigError("graph.source: unknown source '" + c.graph.source + "' (expected " +
                      joined(kSources) + ")");
  }
  if (c.graph.source == "file") {
    c.graph.path = resolve(base_dir, "graph.path", g.require<std::string>("path"), true);
  } else if (c.graph.source == "rule110-assembly") {
    c.graph.tape = g.require<std::string>("tape");
    c.graph.cover = g.get<bool>("cover", true);
    try {
      rule110::Tape::parse(c.graph.tape);
    } catch (const InputError& e) {
      throw ConfigError(std::string("graph.tape: ") + e.what());
    }
  } else {
    c.graph.n = g.require<std::size_t>("n");
    if (c.graph.source == "gnp") {
      c.graph.p = g.require<double>("p");
      if (!(c.graph.p >= 0.0 && c.graph.p <= 1.0)) throw ConfigError("graph.p: must lie in [0,1]");
      c.graph.seed = g.get<std::uint64_t>("seed", 0);
    }
    if (c.graph.source == "cycle" && c.graph.n < 3) throw ConfigError("graph.n: a cycle needs at least 3 nodes");
  }
  g.finish();

  Section p(doc, "potential");
  c.potential.name = p.require<std::string>("name");
  if (!kPotentials.count(c.potential.name)) {
    throw ConfigError("potential.name: unknown potential '" + c.potential.name + "' (expected " +
                      joined(kPotentials) + ")");
  }
  c.potential.beta = p.require<double>("beta");
  if (is_rule110(c.potential.name)) {
    c.potential.alpha = p.get<double>("alpha", c.potential.beta);
    if (c.potential.alpha != c.potential.beta) {
      throw ConfigError("potential.alpha: the gadget potential needs alpha = beta");
    }
  } else {
    c.potential.alpha = p.require<double>("alpha");
  }
  if (c.potential.alpha > c.potential.beta) {
    throw ConfigError("potential.alpha: must not exceed potential.beta");
  }
  if (c.potential.name == "proper_degree") {
    c.potential.f = p.get<std::string>("f", "sum");
    try {
      proper_by_name(c.potential.f);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("potential.f: ") + e.what());
    }
  }
  if (c.potential.name == "degree_like_niceness") {
    c.potential.profile = resolve(base_dir, "potential.profile", p.require<std::string>("profile"), true);
  }
  c.potential.samples = p.get<std::size_t>("samples", 1000);
  p.finish();
  if (is_rule110(c.potential.name) != (c.graph.source == "rule110-assembly") &&
      c.graph.source != "file") {
    throw ConfigError("potential.name: the gadget potentials run on graph.source rule110-assembly");
  }

  Section s(doc, "scheduler");
  c.scheduler.name = s.get<std::string>("name", "complete");
  if (!kSchedulers.count(c.scheduler.name)) {
    throw ConfigError("scheduler.name: unknown scheduler '" + c.scheduler.name + "' (expected " +
                      joined(kSchedulers) + ")");
  }
  if (c.scheduler.name == "round_robin") {
    c.scheduler.batch_size = s.require<std::size_t>("batch_size");
    if (c.scheduler.batch_size < 1) throw ConfigError("scheduler.batch_size: must be at least 1");
  } else if (c.scheduler.name == "scripted") {
    c.scheduler.script = resolve(base_dir, "scheduler.script", s.require<std::string>("script"), true);
    c.scheduler.repeat = s.get<bool>("repeat", true);
    c.scheduler.fair = s.get<bool>("fair", false);
  } else if (c.scheduler.name == "social") {
    c.scheduler.profile = resolve(base_dir, "scheduler.profile", s.require<std::string>("profile"), true);
    c.scheduler.gamma = s.require<std::size_t>("gamma");
  }
  s.finish();

  Section r(doc, "run");
  c.max_rounds = r.get<std::uint64_t>("max_rounds", 1000);
  if (c.max_rounds < 1) throw ConfigError("run.max_rounds: must be at least 1");
  try {
    c.stop_mode = stop_mode_from_string(r.get<std::string>("stop_mode", "cycle"));
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("run.stop_mode: ") + e.what());
  }
  c.prune = r.get<bool>("prune", false);
  c.seed = r.get<std::uint64_t>("seed", 0);
  if (r.has("quiet_streak")) c.quiet_streak = r.get<std::uint64_t>("quiet_streak", 0);
  const std::string level = r.get<std::string>("trace_level", "full");
  if (level == "full") {
    c.trace_level = TraceLevel::full;
  } else if (level == "changes") {
    c.trace_level = TraceLevel::changes;
  } else {
    throw ConfigError("run.trace_level: expected full or changes");
  }
  r.finish();

  Section o(doc, "output");
  if (o.has("trace")) c.trace_path = resolve(base_dir, "output.trace", o.get<std::string>("trace", ""), false);
  if (o.has("final_graph")) {
    c.final_graph_path = resolve(base_dir, "output.final_graph", o.get<std::string>("final_graph", ""), false);
  }
  o.finish();

  if (doc.contains("verify")) {
    if (!doc.at("verify").is_string()) throw ConfigError("verify: expected a string");
    c.verify = doc.at("verify").get<std::string>();
    if (c.verify != "kcore" && c.verify != "rule110" && c.verify != "degree-props") {
      throw ConfigError("verify: expected kcore, rule110 or degree-props");
    }
  }

  json& out = c.resolved;
  out["graph"] = {{"source", c.graph.source}};
  if (c.graph.source == "file") {
    out["graph"]["path"] = c.graph.path;
  } else if (c.graph.source == "rule110-assembly") {
    out["graph"]["tape"] = c.graph.tape;
    out["graph"]["cover"] = c.graph.cover;
  } else {
    out["graph"]["n"] = c.graph.n;
    if (c.graph.source == "gnp") {
      out["graph"]["p"] = c.graph.p;
      out["graph"]["seed"] = c.graph.seed;
    }
  }
  out["potential"] = {{"name", c.potential.name}, {"alpha", c.potential.alpha}, {"beta", c.potential.beta}};
  if (c.potential.name == "proper_degree") out["potential"]["f"] = c.potential.f;
  if (!c.potential.profile.empty()) out["potential"]["profile"] = c.potential.profile;
  out["potential"]["samples"] = c.potential.samples;
  out["scheduler"] = {{"name", c.scheduler.name}};
  if (c.scheduler.name == "round_robin") out["scheduler"]["batch_size"] = c.scheduler.batch_size;
  if (c.scheduler.name == "scripted") {
    out["scheduler"]["script"] = c.scheduler.script;
    out["scheduler"]["repeat"] = c.scheduler.repeat;
    out["scheduler"]["fair"] = c.scheduler.fair;
  }
  if (c.scheduler.name == "social") {
    out["scheduler"]["profile"] = c.scheduler.profile;
    out["scheduler"]["gamma"] = c.scheduler.gamma;
  }
  out["run"] = {{"max_rounds", c.max_rounds},
                {"stop_mode", to_string(c.stop_mode)},
                {"prune", c.prune},
                {"seed", c.seed},
                {"trace_level", c.trace_level == TraceLevel::full ? "full" : "changes"}};
  if (c.quiet_streak) out["run"]["quiet_streak"] = *c.quiet_streak;
  out["output"] = json::object();
  if (!c.trace_path.empty()) out["output"]["trace"] = c.trace_path;
  if (!c.final_graph_path.empty()) out["output"]["final_graph"] = c.final_graph_path;
  if (!c.verify.empty()) out["verify"] = c.verify;
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  const fs::path dir = fs::absolute(fs::path(path)).parent_path();
  return parse_config(doc, dir.string());
}

Experiment build_experiment(const ExperimentConfig& c) {
  Experiment e;
  const GraphSpec& gs = c.graph;
  if (gs.source == "file") {
    e.initial = read_edge_list_file(gs.path);
  } else if (gs.source == "gnp") {
    Rng rng(gs.seed);
    e.initial = gnp(gs.n, gs.p, rng);
  } else if (gs.source == "cycle") {
    e.initial = cycle_graph(gs.n);
  } else if (gs.source == "path") {
    e.initial = path_graph(gs.n);
  } else if (gs.source == "star") {
    e.initial = star_graph(gs.n);
  } else if (gs.source == "complete") {
    e.initial = complete_graph(gs.n);
  } else {
    const rule110::Tape tape = rule110::Tape::parse(gs.tape);
    const auto w = static_cast<std::uint32_t>(tape.width());
    const std::uint32_t ring = gs.cover ? rule110::cover_width(w) : w;
    rule110::Tape ring_tape;
    for (std::uint32_t i = 0; i < ring; ++i) ring_tape.cells.push_back(tape.cells[i % w]);
    e.assembly = rule110::build_assembly(ring_tape);
    e.initial = e.assembly->graph;
  }
  const std::size_t n = e.initial.node_count();

  const PotentialSpec& ps = c.potential;
  if (ps.name == "min_degree") {
    e.potential = min_degree_potential(ps.alpha, ps.beta);
  } else if (ps.name == "proper_degree") {
    e.potential = proper_degree_potential(proper_by_name(ps.f), ps.alpha, ps.beta, ps.samples);
  } else if (ps.name == "degree_like_niceness") {
    const SocialProfile profile = read_profile_file(ps.profile);
    if (profile.size() != n) {
      throw ConfigError("potential.profile: profile has " + std::to_string(profile.size()) +
                        " nodes, graph " + std::to_string(n));
    }
    e.potential = social_potential(profile, ps.alpha, ps.beta, ps.samples);
  } else if (ps.name == "community") {
    e.potential = community_potential(ps.alpha, ps.beta);
  } else if (ps.name == "rule110") {
    e.potential = rule110_potential(ps.beta);
  } else {
    e.potential = two_step_merge(rule110_potential(ps.beta));
  }

  const SchedulerSpec& ss = c.scheduler;
  if (ss.name == "complete") {
    e.scheduler = complete_scheduler();
  } else if (ss.name == "current_edges") {
    e.scheduler = current_edges_scheduler();
  } else if (ss.name == "uniform") {
    e.scheduler = uniform_random_scheduler(n);
  } else if (ss.name == "round_robin") {
    e.scheduler = fair_round_robin_scheduler(ss.batch_size);
  } else if (ss.name == "scripted") {
    e.scheduler = scripted_scheduler(read_script_file(ss.script), ss.repeat, ss.fair, n);
  } else {
    SocialProfile profile = read_profile_file(ss.profile);
    if (profile.size() != n) {
      throw ConfigError("scheduler.profile: profile has " + std::to_string(profile.size()) +
                        " nodes, graph " + std::to_string(n));
    }
    e.scheduler = social_scheduler(std::move(profile), ss.gamma);
  }
  return e;
}

RunConfig make_run_config(const ExperimentConfig& c, const Experiment& e) {
  RunConfig rc(e.initial, *e.potential, e.scheduler);
  rc.max_rounds = c.max_rounds;
  rc.stop_mode = c.stop_mode;
  rc.prune = c.prune;
  rc.seed = c.seed;
  rc.quiet_streak = c.quiet_streak;
  rc.trace_level = c.trace_level;
  if (e.assembly) {
    rc.metadata["ring_tape"] = e.assembly->tape.str();
    rc.metadata["round_to_time"] = c.potential.name == "rule110_merged"
                                       ? "round r ends at CA step r+1"
                                       : "round r ends at time (r+1)/2; odd r+1 are half steps";
  }
  return rc;
}

namespace {

json pairs_json(const std::vector<Pair>& pairs) {
  json a = json::array();
  for (const Pair& p : pairs) a.push_back({p.first, p.second});
  return a;
}

std::vector<Pair> pairs_from(const json& a, const std::string& at) {
  std::vector<Pair> out;
  if (!a.is_array()) throw InputError(at + "expected an array of pairs");
  for (const json& p : a) {
    if (!p.is_array() || p.size() != 2) throw InputError(at + "expected [u, v]");
    out.emplace_back(p[0].get<NodeId>(), p[1].get<NodeId>());
  }
  return out;
}

}  // namespace

void write_trace(std::ostream& out, const RunTrace& trace, const json& config) {
  json header{{"type", "header"},
              {"format", "tnd-trace/1"},
              {"config", config},
              {"seed", trace.seed},
              {"potential", trace.potential},
              {"scheduler", trace.scheduler},
              {"node_count", trace.node_count},
              {"initial_fingerprint", trace.initial_fingerprint.hex()},
              {"metadata", trace.metadata}};
  out << header.dump() << '\n';

  std::size_t ci = 0;
  for (const RoundRecord& r : trace.rounds) {
    json rec{{"type", "round"},
             {"t", r.t},
             {"interactions", r.interactions},
             {"additions", r.additions},
             {"removals", r.removals},
             {"classes", r.classes},
             {"fingerprint", r.fingerprint.hex()}};
    while (ci < trace.changes.size() && trace.changes[ci].t < r.t) ++ci;
    if (ci < trace.changes.size() && trace.changes[ci].t == r.t) {
      rec["add"] = pairs_json(trace.changes[ci].delta.additions);
      rec["remove"] = pairs_json(trace.changes[ci].delta.removals);
    }
    out << rec.dump() << '\n';
  }

  json verdict{{"type", "verdict"},
               {"verdict", to_string(trace.verdict)},
               {"round", trace.verdict_round},
               {"period", trace.period},
               {"heuristic", trace.heuristic},
               {"rounds_executed", trace.rounds_executed},
               {"changing_rounds", trace.changing_rounds},
               {"last_change_round", trace.last_change_round ? json(*trace.last_change_round) : json()},
               {"final_fingerprint", trace.final_fingerprint.hex()}};
  out << verdict.dump() << '\n';
}

void write_trace_file(const std::string& path, const RunTrace& trace, const json& config) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw InputError("cannot write trace '" + path + "'");
  write_trace(out, trace, config);
}

TraceFile read_trace(std::istream& in, const std::string& source) {
  TraceFile tf;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string at = source + ":" + std::to_string(lineno) + ": ";
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(at + e.what());
    }
    const std::string type = rec.value("type", "");
    if (type == "header") {
      tf.header = rec;
    } else if (type == "round") {
      TraceRound r;
      r.t = rec.at("t").get<std::uint64_t>();
      r.fingerprint = rec.value("fingerprint", "");
      if (rec.contains("add")) r.delta.additions = pairs_from(rec.at("add"), at);
      if (rec.contains("remove")) r.delta.removals = pairs_from(rec.at("remove"), at);
      tf.rounds.push_back(std::move(r));
    } else if (type == "verdict") {
      tf.verdict = rec;
    } else {
      throw InputError(at + "unknown record type '" + type + "'");
    }
  }
  if (tf.header.is_null()) throw InputError(source + ": trace has no header record");
  if (tf.verdict.is_null()) throw InputError(source + ": trace has no verdict record");
  return tf;
}

TraceFile read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open trace '" + path + "'");
  return read_trace(in, path);
}

}  // namespace tnd
