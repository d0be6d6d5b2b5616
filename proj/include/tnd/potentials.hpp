#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tnd/graph.hpp"
#include "tnd/local_view.hpp"

namespace tnd {

/// Per-round scratch state a potential may precompute from the pre-round graph.
/// It must be a pure function of that graph.
struct RoundState {
  virtual ~RoundState() = default;
};

struct EvalContext {
  const RoundState* state = nullptr;
};

/// Potential values for the pairs (u, v), v > u, of one row.
///
/// Pairs that are not listed all share `uniform_value`; a model sets it only
/// when every unlisted pair has identical local statistics (for example no
/// common neighbor and no edge).
struct RowValues {
  std::optional<double> uniform_value;
  std::vector<std::pair<NodeId, double>> values;

  void clear() {
    uniform_value.reset();
    values.clear();
  }
};

/// The evaluator behind a Potential. Implementations are immutable and safe to
/// share between threads.
class PotentialModel {
 public:
  virtual ~PotentialModel() = default;

  virtual std::string name() const = 0;
  virtual int radius() const = 0;
  virtual double evaluate(const LocalView& view, const EvalContext& ctx) const = 0;

  /// A model with a change filter promises: may_change(view) == false implies
  /// the threshold rule leaves the pair's edge state unchanged.
  virtual bool has_change_filter() const { return false; }
  virtual bool may_change(const LocalView& /*view*/, const EvalContext& /*ctx*/) const {
    return true;
  }
  /// Superset of the pairs for which may_change can be true. Only called when
  /// has_change_filter() is true.
  virtual std::vector<Pair> change_candidates(const DynGraph& g, const EvalContext& ctx) const;

  /// Edge state the band alpha <= value < beta preserves. Usually the pair's
  /// current edge; a merged potential keeps the half-step state instead.
  virtual bool kept_edge(const LocalView& view, const EvalContext& /*ctx*/) const {
    return view.centers_adjacent();
  }
  /// Graph whose edges kept_edge reports, for row evaluation.
  virtual const DynGraph& kept_graph(const DynGraph& g, const EvalContext& /*ctx*/) const {
    return g;
  }

  virtual std::unique_ptr<RoundState> prepare_round(const DynGraph& /*g*/, bool /*prune*/) const {
    return nullptr;
  }

  /// Values for every pair (u, v) with v > u. The default builds one view per pair.
  virtual void evaluate_row(const DynGraph& g, const EvalContext& ctx, NodeId u,
                            RowValues& out) const;
};

/// A potential function with its thresholds alpha <= beta.
class Potential {
 public:
  Potential(std::shared_ptr<const PotentialModel> model, double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  int radius() const { return model_->radius(); }
  std::string name() const { return model_->name(); }
  const PotentialModel& model() const { return *model_; }
  const std::shared_ptr<const PotentialModel>& model_ptr() const { return model_; }

  double evaluate(const LocalView& view, const EvalContext& ctx = {}) const {
    return model_->evaluate(view, ctx);
  }
  /// Convenience: evaluates on the radius-limited ball of (u, v) in g.
  double evaluate(const DynGraph& g, NodeId u, NodeId v, const EvalContext& ctx = {}) const;

  /// Threshold rule: below alpha the edge disappears, at or above beta it
  /// appears, in between it keeps its state.
  bool decide(double value, bool current) const {
    if (value < alpha_) return false;
    if (value >= beta_) return true;
    return current;
  }

  bool has_change_filter() const { return model_->has_change_filter(); }

  /// Next edge state of the viewed pair.
  bool next_edge(const LocalView& view, const EvalContext& ctx = {}) const;

 private:
  std::shared_ptr<const PotentialModel> model_;
  double alpha_;
  double beta_;
};

/// Edge changes of one round in which every pair of g interacts. With `prune`
/// and a change filter only the model's candidate pairs are evaluated.
EdgeDelta all_pairs_delta(const DynGraph& g, const Potential& potential, bool prune,
                          const EvalContext& ctx);

/// Symmetric, coordinate-wise non-decreasing f(x, y).
struct ProperFunction {
  std::string name;
  std::function<double(double, double)> fn;

  double operator()(double x, double y) const { return fn(x, y); }
};

ProperFunction proper_sum();
ProperFunction proper_min();
ProperFunction proper_max();
ProperFunction proper_product();
/// One of sum, min, max, product.
ProperFunction proper_by_name(const std::string& name);

/// Randomized check of symmetry and monotonicity on the integer grid
/// [0, grid]^2. Throws ConfigError naming the first violating sample.
void validate_proper(const ProperFunction& f, std::size_t samples = 1000,
                     std::uint64_t seed = 1, int grid = 64);

/// g(u) computed from u's label and the labels of its neighbors.
struct DegreeLikeFunction {
  std::string name;
  std::function<double(NodeId node, std::span<const NodeId> neighborhood)> fn;
  /// Node labels the function is defined on (used when sampling).
  std::size_t label_domain = 64;

  double operator()(NodeId node, std::span<const NodeId> neighborhood) const {
    return fn(node, neighborhood);
  }
};

DegreeLikeFunction degree_g();
/// d(u) + 1.
DegreeLikeFunction degree_plus_one_g();

/// Samples nodes, neighborhoods N and sub-neighborhoods N' ⊆ N and checks
/// g(u, N) >= g(u, N'). Throws ConfigError with the violating sample.
void validate_degree_like(const DegreeLikeFunction& g, std::size_t samples = 1000,
                          std::uint64_t seed = 1);

Potential min_degree_potential(double alpha, double beta);
Potential proper_degree_potential(const ProperFunction& f, double alpha, double beta,
                                  std::size_t samples = 1000);
Potential degree_like_potential(const ProperFunction& f, const DegreeLikeFunction& g,
                                double alpha, double beta, std::size_t samples = 1000);
Potential community_potential(double alpha, double beta);
/// The four-branch gadget potential; alpha is fixed to beta.
Potential rule110_potential(double beta);
/// Radius-3 potential that simulates two rounds of `base` in one.
Potential two_step_merge(const Potential& base);

/// The branch value of the gadget potential, given pair statistics. `ce` is
/// only consulted by the first two branches.
double rule110_value(double beta, std::size_t cn, bool edge, const std::function<std::size_t()>& ce);
/// Which of the four branches fires for (CN, |E|): 1..4.
int rule110_branch(std::size_t cn, bool edge);

/// Potentials whose value depends only on CN(u,v), |E(u,v)| and CE(u,v).
/// Gives them a wedge-counting row evaluator.
class PairStatisticsModel : public PotentialModel {
 public:
  int radius() const override { return 1; }
  double evaluate(const LocalView& view, const EvalContext& ctx) const override;
  void evaluate_row(const DynGraph& g, const EvalContext& ctx, NodeId u,
                    RowValues& out) const override;

  virtual double value(std::size_t cn, bool edge, const std::function<std::size_t()>& ce) const = 0;
};

}  // namespace tnd
