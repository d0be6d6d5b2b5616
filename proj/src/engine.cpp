#include "tnd/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace tnd {

EdgeDelta step(const DynGraph& g, const Potential& potential, const InteractionSet& interactions,
               bool prune) {
  const PotentialModel& model = potential.model();
  if (interactions.is_all_pairs()) {
    if (interactions.size() != pair_count(g.node_count())) {
      throw ContractError("all-pairs interaction set does not match the graph size");
    }
    const auto state = model.prepare_round(g, prune);
    return all_pairs_delta(g, potential, prune, EvalContext{state.get()});
  }

  EdgeDelta delta;
  const bool filter = prune && model.has_change_filter();
  const EvalContext ctx;
  for (const Pair& p : interactions.pairs()) {
    g.check_node(p.second);
    GraphBallView view(g, p.first, p.second, model.radius());
    if (filter && !model.may_change(view, ctx)) continue;
    const bool cur = g.has_edge(p.first, p.second);
    const bool next = potential.next_edge(view, ctx);
    if (next != cur) (next ? delta.additions : delta.removals).push_back(p);
  }
  return delta;
}

std::string to_string(StopMode m) {
  switch (m) {
    case StopMode::fixed_point:
      return "fixed_point";
    case StopMode::cycle:
      return "cycle";
    case StopMode::budget:
      return "budget";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::stabilized:
      return "stabilized";
    case Verdict::cycle:
      return "cycle";
    case Verdict::budget:
      return "budget";
  }
  return "?";
}

StopMode stop_mode_from_string(const std::string& s) {
  if (s == "fixed_point") return StopMode::fixed_point;
  if (s == "cycle") return StopMode::cycle;
  if (s == "budget") return StopMode::budget;
  throw ConfigError("unknown stop_mode '" + s + "' (expected fixed_point, cycle or budget)");
}

std::uint64_t default_quiet_streak(std::size_t n) {
  const double pairs = double(pair_count(n));
  if (pairs <= 1) return 20;
  return static_cast<std::uint64_t>(std::ceil(20.0 * pairs * std::log(pairs)));
}

namespace {

struct HistoryEntry {
  std::uint64_t t;  // G(t) has this digest
  Digest digest;
  EdgeDelta delta;  // delta of round t
};

// Exact check that G(s) equals `current` = G(t+1), undoing the stored deltas.
bool confirm_cycle(const DynGraph& current, const std::deque<HistoryEntry>& history,
                   std::size_t from_index) {
  DynGraph g = current;
  for (std::size_t i = history.size(); i-- > from_index;) apply_delta(g, history[i].delta.inverse());
  return g == current;
}

}  // namespace

RunResult run(const RunConfig& config) {
  if (config.max_rounds < 1) throw ConfigError("max_rounds must be at least 1");
  if (!config.scheduler) throw ConfigError("run needs a scheduler");

  RunResult result{RunTrace{}, config.initial_graph};
  DynGraph& g = result.final_graph;
  RunTrace& trace = result.trace;
  Scheduler& sched = *config.scheduler;
  const std::size_t n = g.node_count();

  trace.node_count = n;
  trace.seed = config.seed;
  trace.potential = config.potential.name();
  trace.scheduler = sched.name();
  trace.metadata = config.metadata;
  trace.initial_fingerprint = g.digest();

  Rng rng(config.seed);
  const std::uint64_t streak = config.quiet_streak.value_or(default_quiet_streak(n));
  const std::optional<std::uint64_t> phase = sched.phase_period(n);
  const bool detect_cycles = config.stop_mode != StopMode::fixed_point && phase.has_value() &&
                             config.cycle_history > 0;

  std::deque<HistoryEntry> history;
  std::uint64_t quiet = 0;
  bool decided = false;

  for (std::uint64_t t = 0; t < config.max_rounds; ++t) {
    const InteractionSet c = sched.next(t, g, rng);
    EdgeDelta delta;
    try {
      delta = step(g, config.potential, c, config.prune);
    } catch (const ContractError& e) {
      throw ContractError("round " + std::to_string(t) + ": " + e.what());
    }

    RoundRecord rec;
    rec.t = t;
    rec.interactions = c.size();
    rec.additions = static_cast<std::uint32_t>(delta.additions.size());
    rec.removals = static_cast<std::uint32_t>(delta.removals.size());
    rec.classes = static_cast<std::uint32_t>(g.distinct_degree_count());
    rec.fingerprint = g.digest();

    const Digest before = g.digest();
    apply_delta(g, delta);
    trace.rounds_executed = t + 1;

    const bool changed = !delta.empty();
    if (changed) {
      quiet = 0;
      ++trace.changing_rounds;
      trace.last_change_round = t;
      if (decided && trace.verdict == Verdict::stabilized) {
        if (!trace.heuristic) {
          throw ContractError("graph changed at round " + std::to_string(t) +
                              " after a sound stabilization verdict");
        }
        decided = false;
        trace.heuristic = false;
      }
    } else {
      ++quiet;
    }
    if (config.trace_level == TraceLevel::full || changed) trace.rounds.push_back(rec);
    if (config.observer) config.observer(t, delta, g);

    if (detect_cycles && !decided) {
      history.push_back(HistoryEntry{t, before, changed ? delta : EdgeDelta{}});
      if (history.size() > config.cycle_history) history.pop_front();
    }
    if (changed) trace.changes.push_back(ChangeRecord{t, std::move(delta)});

    if (!decided) {
      const auto window = sched.quiescence_window(n, t);
      bool stable = false;
      bool heuristic = false;
      if (window) {
        stable = *window != kNever && quiet >= *window;
      } else {
        stable = quiet >= streak;
        heuristic = stable;
      }
      if (stable) {
        decided = true;
        trace.verdict = Verdict::stabilized;
        trace.heuristic = heuristic;
        trace.verdict_round = trace.last_change_round ? *trace.last_change_round + 1 : 0;
        trace.period = 1;
      } else if (detect_cycles && changed) {
        // most recent match first, so the reported period is minimal
        for (std::size_t i = history.size(); i-- > 0;) {
          const HistoryEntry& h = history[i];
          const std::uint64_t p = t + 1 - h.t;
          if (h.digest != g.digest() || p % *phase != 0) continue;
          if (!confirm_cycle(g, history, i)) continue;
          decided = true;
          trace.verdict = Verdict::cycle;
          trace.verdict_round = h.t;
          trace.period = p;
          break;
        }
      }
    }

    if (decided && config.stop_mode != StopMode::budget) break;
  }

  if (!decided) {
    trace.verdict = Verdict::budget;
    trace.verdict_round = trace.rounds_executed;
    trace.period = 0;
  }
  if (config.trace_level == TraceLevel::changes && !trace.rounds.empty() &&
      trace.rounds.back().t + 1 != trace.rounds_executed) {
    RoundRecord last;
    last.t = trace.rounds_executed - 1;
    last.classes = static_cast<std::uint32_t>(g.distinct_degree_count());
    last.fingerprint = g.digest();
    trace.rounds.push_back(last);
  }
  trace.final_fingerprint = g.digest();
  return result;
}

DegreeClasses degree_classes(const DynGraph& g) {
  std::vector<NodeId> order(g.node_count());
  for (NodeId u = 0; u < order.size(); ++u) order[u] = u;
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
  DegreeClasses out;
  for (NodeId u : order) {
    if (out.class_degrees.empty() || out.class_degrees.back() != g.degree(u)) {
      out.class_degrees.push_back(g.degree(u));
      out.classes.emplace_back();
    }
    out.classes.back().push_back(u);
  }
  return out;
}

namespace {

std::vector<NodeId> without(std::span<const NodeId> nb, NodeId x) {
  std::vector<NodeId> out;
  out.reserve(nb.size());
  for (NodeId w : nb) {
    if (w != x) out.push_back(w);
  }
  return out;
}

std::string pair_text(NodeId u, NodeId w) {
  return "(" + std::to_string(u) + "," + std::to_string(w) + ")";
}

}  // namespace

PropertyReport check_degree_properties(const std::vector<DynGraph>& graphs) {
  PropertyReport report;
  for (std::size_t t = 1; t + 1 < graphs.size(); ++t) {
    const DynGraph& cur = graphs[t];
    const DynGraph& nxt = graphs[t + 1];
    const std::size_t n = cur.node_count();
    if (nxt.node_count() != n) throw ContractError("graph sequence changes its node set");
    ++report.rounds_checked;
    const std::string at = "t=" + std::to_string(t) + " ";

    for (NodeId u = 0; u < n; ++u) {
      for (NodeId w = 0; w < n; ++w) {
        if (u == w || cur.degree(u) < cur.degree(w)) continue;
        const auto nu = without(nxt.neighbors(u), w);
        const auto nw = without(nxt.neighbors(w), u);
        if (!std::includes(nu.begin(), nu.end(), nw.begin(), nw.end())) {
          report.fail(at + "P1 " + pair_text(u, w) + ": d(u)>=d(w) but N(w) not inside N(u) next round");
        }
        if (u < w && cur.degree(u) == cur.degree(w) && nu != nw) {
          report.fail(at + "P2 " + pair_text(u, w) + ": equal degrees, different next neighborhoods");
        }
      }
    }

    const DegreeClasses rc = degree_classes(cur);
    const DegreeClasses rn = degree_classes(nxt);
    if (rn.count() > rc.count()) {
      report.fail(at + "P3 class count grew from " + std::to_string(rc.count()) + " to " +
                  std::to_string(rn.count()));
    }
    if (rn.count() == rc.count()) {
      for (std::size_t i = 0; i < rc.count(); ++i) {
        if (rc.classes[i].size() != rn.classes[i].size()) {
          report.fail(at + "P4 class " + std::to_string(i + 1) + " has " +
                      std::to_string(rc.classes[i].size()) + " nodes, then " +
                      std::to_string(rn.classes[i].size()));
          break;
        }
      }
    }

    // L4 on G(t): rank of each node's class
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < rc.count(); ++i) {
      for (NodeId x : rc.classes[i]) rank[x] = i;
    }
    for (NodeId u = 0; u < n; ++u) {
      std::size_t worst = 0;
      bool any = false;
      for (NodeId w : cur.neighbors(u)) {
        worst = any ? std::max(worst, rank[w]) : rank[w];
        any = true;
      }
      if (!any) continue;
      for (NodeId x = 0; x < n; ++x) {
        if (x != u && rank[x] <= worst && !cur.has_edge(u, x)) {
          report.fail(at + "L4 node " + std::to_string(u) + " misses " + std::to_string(x) +
                      " from class " + std::to_string(rank[x] + 1));
          break;
        }
      }
    }
  }
  return report;
}

std::vector<NodeId> frozen_nodes(const RunTrace& trace, std::uint64_t window) {
  if (window < 1) throw ConfigError("frozen_nodes window must be at least 1");
  std::vector<char> moved(trace.node_count, 0);
  if (trace.verdict != Verdict::stabilized) {
    const std::uint64_t end = trace.rounds_executed;
    const std::uint64_t from = end > window ? end - window : 0;
    for (auto it = trace.changes.rbegin(); it != trace.changes.rend() && it->t >= from; ++it) {
      for (const auto* list : {&it->delta.additions, &it->delta.removals}) {
        for (const Pair& p : *list) moved[p.first] = moved[p.second] = 1;
      }
    }
  }
  std::vector<NodeId> out;
  for (NodeId u = 0; u < trace.node_count; ++u) {
    if (!moved[u]) out.push_back(u);
  }
  return out;
}

}  // namespace tnd
