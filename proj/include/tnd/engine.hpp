#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tnd/graph.hpp"
#include "tnd/potentials.hpp"
#include "tnd/schedulers.hpp"

namespace tnd {

/// One synchronous round: every pair of `interactions` is decided on the
/// pre-round graph g. With `prune` the potential's change filter skips pairs
/// that provably keep their state.
EdgeDelta step(const DynGraph& g, const Potential& potential, const InteractionSet& interactions,
               bool prune);

enum class StopMode { fixed_point, cycle, budget };
enum class Verdict { stabilized, cycle, budget };
enum class TraceLevel { full, changes };

std::string to_string(StopMode m);
std::string to_string(Verdict v);
StopMode stop_mode_from_string(const std::string& s);

struct RoundRecord {
  std::uint64_t t = 0;
  std::uint64_t interactions = 0;
  std::uint32_t additions = 0;
  std::uint32_t removals = 0;
  std::uint32_t classes = 0;  // distinct degrees of G(t)
  Digest fingerprint;         // of G(t), the pre-round graph
};

struct ChangeRecord {
  std::uint64_t t = 0;
  EdgeDelta delta;
};

struct RunTrace {
  std::size_t node_count = 0;
  std::vector<RoundRecord> rounds;
  std::vector<ChangeRecord> changes;  // rounds with a nonempty delta

  Verdict verdict = Verdict::budget;
  /// stabilized: first t with G(t) equal to all later graphs.
  /// cycle: first round of the cycle.
  std::uint64_t verdict_round = 0;
  std::uint64_t period = 0;
  /// True when the stabilized verdict rests on the quiet-streak heuristic.
  bool heuristic = false;

  std::uint64_t rounds_executed = 0;
  std::uint64_t changing_rounds = 0;
  std::optional<std::uint64_t> last_change_round;
  Digest initial_fingerprint;
  Digest final_fingerprint;

  std::uint64_t seed = 0;
  std::string potential;
  std::string scheduler;
  std::map<std::string, std::string> metadata;
};

/// Called after every round t with its delta and G(t+1).
using RoundObserver =
    std::function<void(std::uint64_t t, const EdgeDelta& delta, const DynGraph& after)>;

struct RunConfig {
  RunConfig(DynGraph g, Potential p, std::shared_ptr<Scheduler> s)
      : initial_graph(std::move(g)), potential(std::move(p)), scheduler(std::move(s)) {}

  DynGraph initial_graph;
  Potential potential;
  std::shared_ptr<Scheduler> scheduler;
  std::uint64_t max_rounds = 1000;
  StopMode stop_mode = StopMode::cycle;
  bool prune = false;
  std::uint64_t seed = 0;
  /// Change-free streak accepted as stabilization for schedulers without a
  /// quiescence guarantee. Default 20·N·ln N with N = n(n-1)/2.
  std::optional<std::uint64_t> quiet_streak;
  std::size_t cycle_history = 4096;
  TraceLevel trace_level = TraceLevel::full;
  std::map<std::string, std::string> metadata;
  RoundObserver observer;
};

struct RunResult {
  RunTrace trace;
  DynGraph final_graph;
};

/// Default heuristic streak for n nodes.
std::uint64_t default_quiet_streak(std::size_t n);

RunResult run(const RunConfig& config);

struct DegreeClasses {
  std::vector<std::vector<NodeId>> classes;  // by decreasing degree
  std::vector<std::size_t> class_degrees;

  std::size_t count() const { return classes.size(); }
};

DegreeClasses degree_classes(const DynGraph& g);

struct PropertyReport {
  bool ok = true;
  std::size_t rounds_checked = 0;
  std::vector<std::string> violations;

  void fail(std::string what) {
    ok = false;
    if (violations.size() < 50) violations.push_back(std::move(what));
  }
};

/// Checks the degree-dynamics properties on consecutive graphs G(t), G(t+1)
/// for t >= 1 of a complete-scheduler run with alpha = beta and a proper f:
///   P1  d_t(u) >= d_t(w) implies N_{t+1}(w) \ {u} ⊆ N_{t+1}(u) \ {w}
///   P2  d_t(u) == d_t(w) implies N_{t+1}(u) \ {w} == N_{t+1}(w) \ {u}
///   P3  |G(t+1)| <= |G(t)|
///   P4  |G(t+1)| == |G(t)| implies equal class sizes rank by rank
///   L4  in G(t), u ~ w with w in class j implies u ~ x for all x in classes k <= j
PropertyReport check_degree_properties(const std::vector<DynGraph>& graphs);

/// Nodes whose neighborhood did not change during the last `window` rounds of
/// the trace; every node when the run stabilized.
std::vector<NodeId> frozen_nodes(const RunTrace& trace, std::uint64_t window);

}  // namespace tnd
