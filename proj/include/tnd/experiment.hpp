#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tnd/engine.hpp"
#include "tnd/rule110.hpp"
#include "tnd/social_profile.hpp"

namespace tnd {

/// Where G(0) comes from.
struct GraphSpec {
  std::string source;  // file, gnp, cycle, path, star, complete, rule110-assembly
  std::string path;    // file
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::string tape;    // rule110-assembly
  bool cover = true;   // replicate narrow tapes to a ring of >= 4 cells
};

struct PotentialSpec {
  std::string name;  // min_degree, proper_degree, degree_like_niceness, community, rule110, rule110_merged
  double alpha = 0.0;
  double beta = 0.0;
  std::string f = "sum";
  std::string profile;
  std::size_t samples = 1000;
};

struct SchedulerSpec {
  std::string name = "complete";  // complete, current_edges, uniform, round_robin, scripted, social
  std::size_t batch_size = 1;
  std::string script;
  bool repeat = true;
  bool fair = false;
  std::size_t gamma = 0;
  std::string profile;
};

/// A validated run configuration. File paths are absolute.
struct ExperimentConfig {
  GraphSpec graph;
  PotentialSpec potential;
  SchedulerSpec scheduler;
  std::uint64_t max_rounds = 1000;
  StopMode stop_mode = StopMode::cycle;
  bool prune = false;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> quiet_streak;
  TraceLevel trace_level = TraceLevel::full;
  std::string trace_path;
  std::string final_graph_path;
  std::string verify;  // "", kcore, rule110, degree-props
  nlohmann::json resolved;  // the same settings as JSON, paths resolved
};

/// Validates a config document. Relative paths are taken from `base_dir`.
/// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::string& base_dir);
ExperimentConfig load_config(const std::string& path);

struct Experiment {
  DynGraph initial;
  std::optional<Potential> potential;
  std::shared_ptr<Scheduler> scheduler;
  std::optional<rule110::CellAssembly> assembly;
};

Experiment build_experiment(const ExperimentConfig& config);
RunConfig make_run_config(const ExperimentConfig& config, const Experiment& experiment);

/// Line-delimited JSON: one header record, one record per traced round (with
/// its additions and removals), one verdict record.
void write_trace(std::ostream& out, const RunTrace& trace, const nlohmann::json& config);
void write_trace_file(const std::string& path, const RunTrace& trace, const nlohmann::json& config);

struct TraceRound {
  std::uint64_t t = 0;
  EdgeDelta delta;
  std::string fingerprint;
};

struct TraceFile {
  nlohmann::json header;
  std::vector<TraceRound> rounds;
  nlohmann::json verdict;
};

TraceFile read_trace(std::istream& in, const std::string& source = "<stream>");
TraceFile read_trace_file(const std::string& path);

}  // namespace tnd
