#include "tnd/extensions.hpp"

#include <algorithm>
#include <unordered_set>

namespace tnd {

DegreeLikeFunction niceness_g(const SocialProfile& profile) {
  profile.validate();
  auto nice = std::make_shared<const std::vector<double>>(profile.niceness);
  DegreeLikeFunction g;
  g.name = "niceness";
  g.label_domain = std::max<std::size_t>(1, nice->size());
  g.fn = [nice](NodeId u, std::span<const NodeId> nb) {
    double s = u < nice->size() ? (*nice)[u] : 0.0;
    for (NodeId w : nb) s += w < nice->size() ? (*nice)[w] : 0.0;
    return s;
  };
  return g;
}

Potential social_potential(const SocialProfile& profile, double alpha, double beta,
                           std::size_t samples) {
  return degree_like_potential(proper_sum(), niceness_g(profile), alpha, beta, samples);
}

namespace {

// Moves every edge of `from` except (from, to) onto `to` and makes sure the
// (to, from) edge exists.
void absorb(const LocalView& ball, NodeId to, NodeId from, EdgeDelta& d) {
  if (!ball.has_edge(to, from)) d.additions.emplace_back(to, from);
  for (NodeId z : ball.neighbors(from)) {
    if (z == to) continue;
    d.removals.emplace_back(from, z);
    if (!ball.has_edge(to, z)) d.additions.emplace_back(to, z);
  }
}

// Coin toss in id order; returns the winner or nothing on equal outcomes.
std::optional<NodeId> toss(NodeId a, NodeId b, Rng& rng) {
  const NodeId lo = std::min(a, b);
  const NodeId hi = std::max(a, b);
  std::bernoulli_distribution coin(0.5);
  const bool heads_lo = coin(rng);
  const bool heads_hi = coin(rng);
  if (heads_lo == heads_hi) return std::nullopt;
  return heads_lo ? lo : hi;
}

// The basic comparison on a pair (p, q) with pre-round degrees.
void compare(const LocalView& ball, NodeId p, NodeId q, Rng& rng, EdgeDelta& d) {
  const std::size_t dp = ball.degree(p);
  const std::size_t dq = ball.degree(q);
  if (dp > dq) {
    absorb(ball, p, q, d);
  } else if (dq > dp) {
    absorb(ball, q, p, d);
  } else if (auto w = toss(p, q, rng)) {
    absorb(ball, *w, *w == p ? q : p, d);
  }
}

class StarProtocol final : public GeneralProtocol {
 public:
  std::string name() const override { return "star"; }

  EdgeDelta rewrite(const LocalView& ball, Rng& rng) const override {
    EdgeDelta d;
    const NodeId u = ball.first();
    const NodeId v = ball.second();
    const std::size_t du = ball.degree(u);
    const std::size_t dv = ball.degree(v);
    if (du != 1 || dv != 1) {
      compare(ball, u, v, rng, d);
      return d;
    }
    if (ball.has_edge(u, v)) return d;  // an isolated edge is already a star
    const NodeId x = ball.neighbors(u).front();
    const NodeId y = ball.neighbors(v).front();
    if (x == y) return d;
    if (ball.degree(x) == 1 && ball.degree(y) == 1) {
      // two isolated edges u-x and v-y
      const auto w = toss(x, y, rng);
      if (!w) return d;
      const NodeId loser = *w == x ? y : x;
      const NodeId loser_partner = loser == x ? u : v;
      d.additions.emplace_back(*w, loser);
      d.additions.emplace_back(*w, loser_partner);
      d.removals.emplace_back(loser, loser_partner);
      return d;
    }
    compare(ball, x, y, rng, d);
    return d;
  }
};

}  // namespace

std::unique_ptr<GeneralProtocol> star_protocol() { return std::make_unique<StarProtocol>(); }

bool is_spanning_star(const DynGraph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) return true;
  if (g.edge_count() != n - 1) return false;
  std::size_t centers = 0;
  for (NodeId u = 0; u < n; ++u) {
    const std::size_t d = g.degree(u);
    if (d == n - 1) {
      ++centers;
    } else if (d != 1) {
      return false;
    }
  }
  return centers >= 1;
}

std::optional<Progress> classify_progress(const DynGraph& before, const EdgeDelta& delta,
                                          const DynGraph& after) {
  if (delta.empty()) return Progress::nothing;
  if (component_count(after) < component_count(before)) return Progress::merged_components;
  std::unordered_set<NodeId> touched;
  for (const auto* list : {&delta.additions, &delta.removals}) {
    for (const Pair& p : *list) {
      touched.insert(p.first);
      touched.insert(p.second);
    }
  }
  for (NodeId z : touched) {
    const auto now = after.neighbors(z);
    if (now.size() != 1) continue;
    const auto was = before.neighbors(z);
    if (was.size() != 1 || was[0] != now[0]) return Progress::new_leaf;
  }
  return std::nullopt;
}

GeneralRunResult run_general(const DynGraph& g0, const GeneralProtocol& protocol,
                             Scheduler& scheduler, const GeneralRunConfig& config) {
  if (!scheduler.singleton()) {
    throw ConfigError("general protocols need a scheduler with one interaction per round, got '" +
                      scheduler.name() + "'");
  }
  GeneralRunResult res;
  res.final_graph = g0;
  DynGraph& g = res.final_graph;
  RunTrace& trace = res.trace;
  trace.node_count = g.node_count();
  trace.seed = config.seed;
  trace.potential = protocol.name();
  trace.scheduler = scheduler.name();
  trace.initial_fingerprint = g.digest();
  Rng rng(config.seed);

  const auto finish = [&](bool reached) {
    res.reached = reached;
    trace.verdict = reached ? Verdict::stabilized : Verdict::budget;
    trace.verdict_round = trace.rounds_executed;
    trace.final_fingerprint = g.digest();
  };
  if (config.stop && config.stop(g)) {
    finish(true);
    return res;
  }

  for (std::uint64_t t = 0; t < config.budget; ++t) {
    const InteractionSet c = scheduler.next(t, g, rng);
    if (c.size() > 1) throw ConfigError("scheduler delivered more than one interaction in a round");
    EdgeDelta delta;
    if (!c.empty()) {
      const Pair p = c.pairs().front();
      GraphBallView ball(g, p.first, p.second, 2);
      delta = protocol.rewrite(ball, rng);
      const auto near = ball_nodes(g, p.first, p.second, 2);
      auto inside = [&](NodeId w) { return std::binary_search(near.begin(), near.end(), w); };
      for (const auto* list : {&delta.additions, &delta.removals}) {
        for (const Pair& q : *list) {
          if (!inside(q.first) && !inside(q.second)) {
            throw ContractError("round " + std::to_string(t) + ": rewrite of " +
                                std::to_string(p.first) + "-" + std::to_string(p.second) +
                                " touches pair " + std::to_string(q.first) + "-" +
                                std::to_string(q.second) + " beyond distance 2");
          }
        }
      }
    }

    RoundRecord rec;
    rec.t = t;
    rec.interactions = c.size();
    rec.additions = static_cast<std::uint32_t>(delta.additions.size());
    rec.removals = static_cast<std::uint32_t>(delta.removals.size());
    rec.classes = static_cast<std::uint32_t>(g.distinct_degree_count());
    rec.fingerprint = g.digest();

    if (delta.empty()) {
      ++res.idle;
    } else if (config.check_progress) {
      const DynGraph before = g;
      apply_delta(g, delta);
      const std::size_t cb = component_count(before);
      const std::size_t ca = component_count(g);
      if (ca > cb) res.max_component_increase = std::max<std::uint64_t>(res.max_component_increase, ca - cb);
      const auto kind = classify_progress(before, delta, g);
      if (!kind) {
        if (res.progress_violations.size() < 20) {
          res.progress_violations.push_back("round " + std::to_string(t) +
                                            ": change that neither merges components nor creates a leaf");
        }
      } else if (*kind == Progress::merged_components) {
        ++res.merges;
      } else {
        ++res.new_leaves;
      }
    } else {
      apply_delta(g, delta);
    }
    trace.rounds_executed = t + 1;
    if (!delta.empty()) {
      ++trace.changing_rounds;
      trace.last_change_round = t;
    }
    if (config.trace_level == TraceLevel::full || !delta.empty()) trace.rounds.push_back(rec);
    if (!delta.empty()) trace.changes.push_back(ChangeRecord{t, std::move(delta)});
    if (config.stop && config.stop(g)) {
      finish(true);
      return res;
    }
  }
  finish(false);
  return res;
}

}  // namespace tnd
