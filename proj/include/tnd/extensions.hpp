#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tnd/engine.hpp"
#include "tnd/local_view.hpp"
#include "tnd/potentials.hpp"
#include "tnd/schedulers.hpp"
#include "tnd/social_profile.hpp"

namespace tnd {

/// g(u) = n(u) + sum of n(w) over the neighbors w of u.
DegreeLikeFunction niceness_g(const SocialProfile& profile);

/// f = sum over niceness_g, the social-model potential.
Potential social_potential(const SocialProfile& profile, double alpha, double beta,
                           std::size_t samples = 1000);

/// A stateless protocol that rewrites the neighborhood of an interacting pair.
class GeneralProtocol {
 public:
  virtual ~GeneralProtocol() = default;
  virtual std::string name() const = 0;
  /// The rewrite may only touch pairs with an endpoint within distance 2 of
  /// the centers. It reads the graph through the radius-2 view only.
  virtual EdgeDelta rewrite(const LocalView& ball, Rng& rng) const = 0;
};

/// The spanning-star protocol. Degrees are taken before the interaction:
///   d(u) > d(v): add (u,v) if absent and move v's other edges to u.
///   d(u) = d(v) != 1: both toss a coin (lower id first); the node that tossed
///     heads alone plays u above; equal tosses change nothing.
///   d(u) = d(v) = 1: with x, y the unique neighbors of u, v: nothing if x = y
///     or u ~ v; if d(x) = d(y) = 1, x and y toss and the winner becomes the
///     root of a 3-leaf tree (its partner, the loser and the loser's partner);
///     otherwise the rules above apply to (x, y).
std::unique_ptr<GeneralProtocol> star_protocol();

bool is_spanning_star(const DynGraph& g);

enum class Progress { merged_components, new_leaf, nothing };

/// Which clause of the progress trichotomy a star-protocol round satisfies
/// (first match in the order above). nullopt: a change that is neither.
std::optional<Progress> classify_progress(const DynGraph& before, const EdgeDelta& delta,
                                          const DynGraph& after);

struct GeneralRunResult {
  RunTrace trace;
  DynGraph final_graph;
  bool reached = false;  // stop predicate held
  std::uint64_t merges = 0;
  std::uint64_t new_leaves = 0;
  std::uint64_t idle = 0;
  std::vector<std::string> progress_violations;
  std::uint64_t max_component_increase = 0;
};

struct GeneralRunConfig {
  std::uint64_t budget = 1000000;
  std::uint64_t seed = 0;
  TraceLevel trace_level = TraceLevel::changes;
  /// Checked before the first round and after each round; default: spanning star.
  std::function<bool(const DynGraph&)> stop = is_spanning_star;
  /// Classify each round with the star trichotomy.
  bool check_progress = true;
};

/// Applies the protocol's rewrite to the single pair of each round.
GeneralRunResult run_general(const DynGraph& g0, const GeneralProtocol& protocol,
                             Scheduler& scheduler, const GeneralRunConfig& config);

}  // namespace tnd
