#include "tnd/schedulers.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace tnd {

std::uint64_t pair_count(std::size_t n) {
  return n < 2 ? 0 : std::uint64_t{n} * (n - 1) / 2;
}

InteractionSet InteractionSet::of(std::vector<Pair> pairs, std::size_t n) {
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Pair& p = pairs[i];
    if (p.first == p.second) {
      throw InputError("self pair " + std::to_string(p.first) + "-" + std::to_string(p.second));
    }
    if (p.second >= n) {
      throw InputError("pair " + std::to_string(p.first) + "-" + std::to_string(p.second) +
                       " out of range (n=" + std::to_string(n) + ")");
    }
    if (i > 0 && pairs[i - 1] == p) {
      throw InputError("duplicate pair " + std::to_string(p.first) + "-" +
                       std::to_string(p.second) + " in one round");
    }
  }
  return InteractionSet(std::move(pairs));
}

std::uint64_t InteractionSet::size() const {
  if (const auto* a = std::get_if<AllPairs>(&data_)) return pair_count(a->n);
  return std::get<std::vector<Pair>>(data_).size();
}

const std::vector<Pair>& InteractionSet::pairs() const {
  if (is_all_pairs()) throw ContractError("all-pairs interaction set has no explicit list");
  return std::get<std::vector<Pair>>(data_);
}

std::vector<Pair> InteractionSet::materialize() const {
  if (const auto* a = std::get_if<AllPairs>(&data_)) {
    std::vector<Pair> out;
    out.reserve(pair_count(a->n));
    for (NodeId u = 0; u < a->n; ++u) {
      for (NodeId v = u + 1; v < a->n; ++v) out.emplace_back(u, v);
    }
    return out;
  }
  return std::get<std::vector<Pair>>(data_);
}

bool InteractionSet::contains(Pair p) const {
  if (const auto* a = std::get_if<AllPairs>(&data_)) {
    return p.first != p.second && p.second < a->n;
  }
  const auto& v = std::get<std::vector<Pair>>(data_);
  return std::binary_search(v.begin(), v.end(), p);
}

bool operator==(const InteractionSet& a, const InteractionSet& b) {
  if (a.is_all_pairs() != b.is_all_pairs()) return a.materialize() == b.materialize();
  return a.data_ == b.data_;
}

namespace {

class CompleteScheduler final : public Scheduler {
 public:
  std::string name() const override { return "complete"; }
  InteractionSet next(std::uint64_t, const DynGraph& g, Rng&) override {
    return InteractionSet::all_pairs(g.node_count());
  }
  std::optional<std::uint64_t> fairness_period(std::size_t) const override { return 1; }
  std::optional<std::uint64_t> phase_period(std::size_t) const override { return 1; }
  std::optional<std::uint64_t> quiescence_window(std::size_t, std::uint64_t) const override {
    return 1;
  }
};

// Not weakly fair: pairs that are not edges never interact.
class CurrentEdgesScheduler final : public Scheduler {
 public:
  std::string name() const override { return "current_edges"; }
  InteractionSet next(std::uint64_t, const DynGraph& g, Rng&) override {
    return InteractionSet::of(g.edges(), g.node_count());
  }
  std::optional<std::uint64_t> phase_period(std::size_t) const override { return 1; }
  std::optional<std::uint64_t> quiescence_window(std::size_t, std::uint64_t) const override {
    return 1;
  }
};

class UniformRandomScheduler final : public Scheduler {
 public:
  explicit UniformRandomScheduler(std::size_t n) : n_(n) {
    if (n < 2) throw ConfigError("uniform random scheduler needs at least 2 nodes");
  }
  std::string name() const override { return "uniform"; }
  InteractionSet next(std::uint64_t, const DynGraph& g, Rng& rng) override {
    if (g.node_count() != n_) {
      throw ConfigError("uniform scheduler built for " + std::to_string(n_) + " nodes, graph has " +
                        std::to_string(g.node_count()));
    }
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n_ - 1));
    NodeId u = pick(rng);
    NodeId v = pick(rng);
    while (v == u) v = pick(rng);
    return InteractionSet::of({Pair(u, v)}, n_);
  }
  std::optional<std::uint64_t> phase_period(std::size_t) const override { return std::nullopt; }
  std::optional<std::uint64_t> quiescence_window(std::size_t, std::uint64_t) const override {
    return std::nullopt;
  }
  bool singleton() const override { return true; }

 private:
  std::size_t n_;
};

class RoundRobinScheduler final : public Scheduler {
 public:
  explicit RoundRobinScheduler(std::size_t batch) : batch_(batch) {
    if (batch < 1) throw ConfigError("round robin batch_size must be at least 1");
  }
  std::string name() const override { return "round_robin"; }

  InteractionSet next(std::uint64_t t, const DynGraph& g, Rng&) override {
    const std::size_t n = g.node_count();
    const std::uint64_t total = pair_count(n);
    if (total == 0) return {};
    const std::uint64_t period = period_for(n);
    const std::uint64_t start = (t % period) * batch_;
    const std::uint64_t stop = std::min<std::uint64_t>(total, start + batch_);
    // locate the starting row
    NodeId u = 0;
    std::uint64_t row_start = 0;
    while (row_start + (n - 1 - u) <= start) {
      row_start += n - 1 - u;
      ++u;
    }
    NodeId v = static_cast<NodeId>(u + 1 + (start - row_start));
    std::vector<Pair> out;
    out.reserve(stop - start);
    for (std::uint64_t i = start; i < stop; ++i) {
      out.emplace_back(u, v);
      if (++v == n) {
        ++u;
        v = u + 1;
      }
    }
    return InteractionSet::of(std::move(out), n);
  }

  std::optional<std::uint64_t> fairness_period(std::size_t n) const override {
    return period_for(n);
  }
  std::optional<std::uint64_t> phase_period(std::size_t n) const override { return period_for(n); }
  std::optional<std::uint64_t> quiescence_window(std::size_t n, std::uint64_t) const override {
    return period_for(n);
  }

 private:
  std::uint64_t period_for(std::size_t n) const {
    const std::uint64_t total = pair_count(n);
    return total == 0 ? 1 : (total + batch_ - 1) / batch_;
  }

  std::size_t batch_;
};

class ScriptedScheduler final : public Scheduler {
 public:
  ScriptedScheduler(std::vector<InteractionSet> script, bool repeat, bool fair)
      : script_(std::move(script)), repeat_(repeat), fair_(fair) {}

  std::string name() const override { return "scripted"; }
  InteractionSet next(std::uint64_t t, const DynGraph&, Rng&) override {
    if (t < script_.size()) return script_[t];
    if (!repeat_) return {};
    return script_[t % script_.size()];
  }
  std::optional<std::uint64_t> fairness_period(std::size_t) const override {
    if (fair_) return script_.size();
    return std::nullopt;
  }
  std::optional<std::uint64_t> phase_period(std::size_t) const override {
    if (repeat_) return script_.size();
    return std::nullopt;
  }
  std::optional<std::uint64_t> quiescence_window(std::size_t, std::uint64_t t) const override {
    if (repeat_) return script_.size();
    // past the end every round is empty
    return t >= script_.size() ? 1 : kNever;
  }
  bool singleton() const override {
    return std::all_of(script_.begin(), script_.end(),
                       [](const InteractionSet& s) { return s.size() <= 1; });
  }

 private:
  std::vector<InteractionSet> script_;
  bool repeat_;
  bool fair_;
};

class SocialScheduler final : public Scheduler {
 public:
  SocialScheduler(SocialProfile profile, std::size_t gamma)
      : profile_(std::move(profile)), gamma_(gamma) {
    profile_.validate();
    for (auto x : profile_.extroversion) max_x_ = std::max<std::uint64_t>(max_x_, x);
  }

  std::string name() const override { return "social"; }

  InteractionSet next(std::uint64_t, const DynGraph& g, Rng&) override {
    const std::size_t n = g.node_count();
    if (n != profile_.size()) {
      throw ConfigError("social profile has " + std::to_string(profile_.size()) +
                        " nodes, graph has " + std::to_string(n));
    }
    std::vector<Pair> out;
    std::vector<std::uint64_t> dist(n, kNever);
    std::vector<NodeId> seen;
    for (NodeId u = 0; u < n; ++u) {
      const std::uint64_t limit = profile_.extroversion[u] + max_x_;
      // BFS truncated at the largest distance that can qualify
      std::deque<NodeId> queue{u};
      dist[u] = 0;
      seen.assign(1, u);
      while (!queue.empty()) {
        const NodeId w = queue.front();
        queue.pop_front();
        if (dist[w] == limit) continue;
        for (NodeId z : g.neighbors(w)) {
          if (dist[z] != kNever) continue;
          dist[z] = dist[w] + 1;
          seen.push_back(z);
          queue.push_back(z);
        }
      }
      for (NodeId v : seen) {
        if (v <= u || profile_.is_enemy(u, v)) continue;
        if (dist[v] == 1) {
          if (common_neighbors(g, u, v) <= gamma_) out.emplace_back(u, v);
        } else if (dist[v] <= std::uint64_t{profile_.extroversion[u]} + profile_.extroversion[v]) {
          out.emplace_back(u, v);
        }
      }
      for (NodeId v : seen) dist[v] = kNever;
    }
    return InteractionSet::of(std::move(out), n);
  }

  std::optional<std::uint64_t> phase_period(std::size_t) const override { return 1; }
  std::optional<std::uint64_t> quiescence_window(std::size_t, std::uint64_t) const override {
    return 1;
  }

 private:
  SocialProfile profile_;
  std::size_t gamma_;
  std::uint64_t max_x_ = 0;
};

}  // namespace

std::unique_ptr<Scheduler> complete_scheduler() { return std::make_unique<CompleteScheduler>(); }

std::unique_ptr<Scheduler> current_edges_scheduler() {
  return std::make_unique<CurrentEdgesScheduler>();
}

std::unique_ptr<Scheduler> uniform_random_scheduler(std::size_t n) {
  return std::make_unique<UniformRandomScheduler>(n);
}

std::unique_ptr<Scheduler> fair_round_robin_scheduler(std::size_t batch_size) {
  return std::make_unique<RoundRobinScheduler>(batch_size);
}

std::unique_ptr<Scheduler> scripted_scheduler(std::vector<std::vector<Pair>> script, bool repeat,
                                              bool claim_fair, std::size_t n) {
  if (script.empty()) throw ConfigError("scripted scheduler needs at least one round");
  std::vector<InteractionSet> rounds;
  rounds.reserve(script.size());
  for (auto& r : script) rounds.push_back(InteractionSet::of(std::move(r), n));
  if (claim_fair) {
    if (!repeat) throw ConfigError("a scripted scheduler can only be fair if it repeats");
    std::vector<char> covered(pair_count(n), 0);
    auto index = [n](Pair p) {
      return std::uint64_t{p.first} * (2 * n - p.first - 1) / 2 + (p.second - p.first - 1);
    };
    for (const auto& r : rounds) {
      for (const Pair& p : r.pairs()) covered[index(p)] = 1;
    }
    std::vector<std::string> missing;
    std::size_t missing_count = 0;
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (covered[index(Pair(u, v))]) continue;
        ++missing_count;
        if (missing.size() < 20) missing.push_back(std::to_string(u) + "-" + std::to_string(v));
      }
    }
    if (missing_count > 0) {
      std::ostringstream os;
      os << "scripted scheduler claimed fair but " << missing_count << " pairs never interact:";
      for (const auto& m : missing) os << ' ' << m;
      if (missing_count > missing.size()) os << " ...";
      throw ConfigError(os.str());
    }
  }
  return std::make_unique<ScriptedScheduler>(std::move(rounds), repeat, claim_fair);
}

std::unique_ptr<Scheduler> social_scheduler(SocialProfile profile, std::size_t gamma) {
  return std::make_unique<SocialScheduler>(std::move(profile), gamma);
}

std::vector<std::vector<Pair>> adversarial_fair_script(std::size_t n, std::size_t period, Pair late,
                                                       std::uint64_t seed) {
  if (period < 2) throw ConfigError("adversarial script period must be at least 2");
  if (late.second >= n || late.first == late.second) throw ConfigError("deferred pair out of range");
  Rng rng(seed);
  std::vector<Pair> others;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (Pair(u, v) != late) others.emplace_back(u, v);
    }
  }
  std::shuffle(others.begin(), others.end(), rng);
  std::vector<std::vector<Pair>> script(period);
  for (std::size_t i = 0; i < others.size(); ++i) script[i % (period - 1)].push_back(others[i]);
  script.back().push_back(late);
  return script;
}

}  // namespace tnd
