#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "tnd/graph.hpp"
#include "tnd/social_profile.hpp"

namespace tnd {

/// The one pseudorandom generator type used throughout.
using Rng = std::mt19937_64;

/// The set C(t) of pairs interacting in one round. "All pairs" is kept
/// symbolic so that complete rounds on large graphs never materialize it.
class InteractionSet {
 public:
  InteractionSet() : data_(std::vector<Pair>{}) {}

  static InteractionSet all_pairs(std::size_t n) { return InteractionSet(AllPairs{n}); }
  /// Sorts and validates: no self pairs, no duplicates, ids below n.
  static InteractionSet of(std::vector<Pair> pairs, std::size_t n);

  bool is_all_pairs() const { return std::holds_alternative<AllPairs>(data_); }
  std::uint64_t size() const;
  bool empty() const { return size() == 0; }
  /// Explicit pairs; throws ContractError for an all-pairs set.
  const std::vector<Pair>& pairs() const;
  /// Explicit pairs for either kind (all pairs enumerated lexicographically).
  std::vector<Pair> materialize() const;
  bool contains(Pair p) const;

  friend bool operator==(const InteractionSet& a, const InteractionSet& b);

 private:
  struct AllPairs {
    std::size_t n;
    friend bool operator==(const AllPairs&, const AllPairs&) = default;
  };
  explicit InteractionSet(AllPairs a) : data_(a) {}
  explicit InteractionSet(std::vector<Pair> p) : data_(std::move(p)) {}

  std::variant<AllPairs, std::vector<Pair>> data_;
};

inline constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

std::uint64_t pair_count(std::size_t n);

/// Generator of interaction sets with a declared fairness contract.
class Scheduler {
 public:
  virtual ~Scheduler() = default;

  virtual std::string name() const = 0;
  virtual InteractionSet next(std::uint64_t t, const DynGraph& g, Rng& rng) = 0;

  /// Weak fairness: every pair appears in any `P` consecutive rounds.
  virtual std::optional<std::uint64_t> fairness_period(std::size_t /*n*/) const {
    return std::nullopt;
  }

  /// C(t) depends only on G(t) and t mod phase_period. Enables exact cycle
  /// detection over (graph, phase). nullopt for random schedulers.
  virtual std::optional<std::uint64_t> phase_period(std::size_t n) const = 0;

  /// Number of consecutive change-free rounds ending at round t that prove the
  /// graph can never change again. kNever: no proof possible yet; nullopt: the
  /// scheduler gives no guarantee and the engine falls back to a heuristic streak.
  virtual std::optional<std::uint64_t> quiescence_window(std::size_t n, std::uint64_t t) const = 0;

  /// Every round has at most one pair.
  virtual bool singleton() const { return false; }
};

std::unique_ptr<Scheduler> complete_scheduler();
std::unique_ptr<Scheduler> current_edges_scheduler();
/// One uniformly drawn pair per round from the run's random stream. Needs n >= 2.
std::unique_ptr<Scheduler> uniform_random_scheduler(std::size_t n);
/// All pairs in lexicographic order, batch_size per round; the last batch of a
/// period may be shorter, so the sequence restarts every ceil(N/batch) rounds.
std::unique_ptr<Scheduler> fair_round_robin_scheduler(std::size_t batch_size);

/// Replays `script`. With `claim_fair` the script must repeat and cover all
/// pairs of an n-node graph, otherwise ConfigError lists the missing pairs.
std::unique_ptr<Scheduler> scripted_scheduler(std::vector<std::vector<Pair>> script, bool repeat,
                                              bool claim_fair, std::size_t n);

/// Per round: no enemy pairs; non-adjacent pairs with 1 < dist <= x(u)+x(v);
/// adjacent pairs with at most gamma common neighbors.
std::unique_ptr<Scheduler> social_scheduler(SocialProfile profile, std::size_t gamma);

/// A fair script that defers `late` to the last round of each period: the other
/// pairs are spread over period-1 rounds in a seeded random order.
std::vector<std::vector<Pair>> adversarial_fair_script(std::size_t n, std::size_t period, Pair late,
                                                       std::uint64_t seed);

}  // namespace tnd
