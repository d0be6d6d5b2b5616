#include "tnd/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace tnd {

namespace {

// Dense per-row scratch, reused between rows of the same size.
struct RowScratch {
  std::vector<std::uint32_t> count;
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;
  std::vector<NodeId> touched;

  void prepare(std::size_t n) {
    if (count.size() != n) {
      count.assign(n, 0);
      stamp.assign(n, 0);
      epoch = 0;
    }
    touched.clear();
  }
  std::uint32_t next_epoch() {
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
    return epoch;
  }
};

RowScratch& row_scratch() {
  thread_local RowScratch s;
  return s;
}

bool within_two(const DynGraph& g, NodeId c, NodeId w) {
  return c == w || g.has_edge(c, w) || common_neighbors(g, c, w) > 0;
}

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// PotentialModel defaults

std::vector<Pair> PotentialModel::change_candidates(const DynGraph&, const EvalContext&) const {
  throw ContractError("potential '" + name() + "' declares no change filter");
}

void PotentialModel::evaluate_row(const DynGraph& g, const EvalContext& ctx, NodeId u,
                                  RowValues& out) const {
  out.clear();
  const auto n = static_cast<NodeId>(g.node_count());
  out.values.reserve(n > u ? n - u - 1 : 0);
  for (NodeId v = u + 1; v < n; ++v) {
    GraphBallView view(g, u, v, radius());
    out.values.emplace_back(v, evaluate(view, ctx));
  }
}

Potential::Potential(std::shared_ptr<const PotentialModel> model, double alpha, double beta)
    : model_(std::move(model)), alpha_(alpha), beta_(beta) {
  if (!model_) throw ConfigError("potential without evaluator");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw ConfigError("thresholds must be finite");
  if (alpha > beta) {
    throw ConfigError("alpha (" + num(alpha) + ") must not exceed beta (" + num(beta) + ")");
  }
}

double Potential::evaluate(const DynGraph& g, NodeId u, NodeId v, const EvalContext& ctx) const {
  GraphBallView view(g, u, v, radius());
  return model_->evaluate(view, ctx);
}

bool Potential::next_edge(const LocalView& view, const EvalContext& ctx) const {
  const double value = model_->evaluate(view, ctx);
  if (value < alpha_) return false;
  if (value >= beta_) return true;
  return model_->kept_edge(view, ctx);
}

EdgeDelta all_pairs_delta(const DynGraph& g, const Potential& potential, bool prune,
                          const EvalContext& ctx) {
  EdgeDelta delta;
  const PotentialModel& model = potential.model();
  const auto n = static_cast<NodeId>(g.node_count());

  if (prune && model.has_change_filter()) {
    for (const Pair& p : model.change_candidates(g, ctx)) {
      GraphBallView view(g, p.first, p.second, model.radius());
      if (!model.may_change(view, ctx)) continue;
      const bool cur = g.has_edge(p.first, p.second);
      const bool next = potential.next_edge(view, ctx);
      if (next != cur) (next ? delta.additions : delta.removals).push_back(p);
    }
    std::sort(delta.additions.begin(), delta.additions.end());
    std::sort(delta.removals.begin(), delta.removals.end());
    return delta;
  }

  const DynGraph& kept = model.kept_graph(g, ctx);
  std::vector<std::uint32_t> listed(n, 0);
  RowValues row;
  for (NodeId u = 0; u < n; ++u) {
    model.evaluate_row(g, ctx, u, row);
    const std::uint32_t mark = u + 1;
    for (const auto& [v, value] : row.values) {
      listed[v] = mark;
      const bool cur = g.has_edge(u, v);
      const bool next = potential.decide(value, kept.has_edge(u, v));
      if (next != cur) (next ? delta.additions : delta.removals).emplace_back(u, v);
    }
    if (!row.uniform_value) continue;
    const bool add_far = potential.decide(*row.uniform_value, false);
    const bool keep_far = potential.decide(*row.uniform_value, true);
    if (add_far) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (listed[v] != mark && !g.has_edge(u, v)) delta.additions.emplace_back(u, v);
      }
    } else if (!keep_far) {
      for (NodeId v : g.neighbors(u)) {
        if (v > u && listed[v] != mark) delta.removals.emplace_back(u, v);
      }
    } else if (&kept != &g) {
      // unlisted pairs take the kept state
      for (NodeId v : g.neighbors(u)) {
        if (v > u && listed[v] != mark && !kept.has_edge(u, v)) delta.removals.emplace_back(u, v);
      }
      for (NodeId v : kept.neighbors(u)) {
        if (v > u && listed[v] != mark && !g.has_edge(u, v)) delta.additions.emplace_back(u, v);
      }
    }
  }
  std::sort(delta.additions.begin(), delta.additions.end());
  std::sort(delta.removals.begin(), delta.removals.end());
  return delta;
}

// ---------------------------------------------------------------------------
// Proper and degree-like functions

ProperFunction proper_sum() { return {"sum", [](double x, double y) { return x + y; }}; }
ProperFunction proper_min() { return {"min", [](double x, double y) { return std::min(x, y); }}; }
ProperFunction proper_max() { return {"max", [](double x, double y) { return std::max(x, y); }}; }
ProperFunction proper_product() { return {"product", [](double x, double y) { return x * y; }}; }

ProperFunction proper_by_name(const std::string& name) {
  if (name == "sum") return proper_sum();
  if (name == "min") return proper_min();
  if (name == "max") return proper_max();
  if (name == "product") return proper_product();
  throw ConfigError("unknown proper function '" + name + "' (expected sum, min, max or product)");
}

void validate_proper(const ProperFunction& f, std::size_t samples, std::uint64_t seed, int grid) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(0, grid);
  std::uniform_int_distribution<int> step(1, std::max(1, grid));
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = coord(rng);
    const double y = coord(rng);
    const double e = step(rng);
    const double fxy = f(x, y);
    std::string what;
    if (fxy != f(y, x)) {
      what = "f(" + num(x) + "," + num(y) + ") != f(" + num(y) + "," + num(x) + ")";
    } else if (f(x, y + e) < fxy) {
      what = "f(" + num(x) + "," + num(y + e) + ") < f(" + num(x) + "," + num(y) + ")";
    } else if (f(x + e, y) < fxy) {
      what = "f(" + num(x + e) + "," + num(y) + ") < f(" + num(x) + "," + num(y) + ")";
    }
    if (!what.empty()) throw ConfigError("function '" + f.name + "' is not proper: " + what);
  }
}

DegreeLikeFunction degree_g() {
  return {"degree", [](NodeId, std::span<const NodeId> nb) { return double(nb.size()); }, 64};
}

DegreeLikeFunction degree_plus_one_g() {
  return {"degree+1", [](NodeId, std::span<const NodeId> nb) { return double(nb.size()) + 1.0; },
          64};
}

void validate_degree_like(const DegreeLikeFunction& g, std::size_t samples, std::uint64_t seed) {
  if (g.label_domain < 1) throw ConfigError("degree-like function with empty label domain");
  std::mt19937_64 rng(seed);
  const std::size_t dom = g.label_domain;
  std::vector<NodeId> others;
  std::vector<NodeId> full;
  std::vector<NodeId> sub;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto u = static_cast<NodeId>(rng() % dom);
    others.clear();
    for (NodeId w = 0; w < dom; ++w) {
      if (w != u) others.push_back(w);
    }
    std::shuffle(others.begin(), others.end(), rng);
    const std::size_t size = others.empty() ? 0 : rng() % (others.size() + 1);
    full.assign(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(full.begin(), full.end());
    sub.clear();
    for (NodeId w : full) {
      if (rng() & 1) sub.push_back(w);
    }
    const double big = g(u, full);
    const double small = g(u, sub);
    if (big < small) {
      throw ConfigError("function '" + g.name + "' is not degree-like: node " + std::to_string(u) +
                        " with " + std::to_string(full.size()) + " neighbors gives " + num(big) +
                        " but a sub-neighborhood of " + std::to_string(sub.size()) + " gives " +
                        num(small));
    }
  }
}

// ---------------------------------------------------------------------------
// Degree based potentials

namespace {

class MinDegreeModel final : public PotentialModel {
 public:
  std::string name() const override { return "min_degree"; }
  int radius() const override { return 1; }
  double evaluate(const LocalView& view, const EvalContext&) const override {
    return double(std::min(view.degree(view.first()), view.degree(view.second())));
  }
};

class ProperDegreeModel final : public PotentialModel {
 public:
  explicit ProperDegreeModel(ProperFunction f) : f_(std::move(f)) {}
  std::string name() const override { return "proper_degree"; }
  int radius() const override { return 1; }
  double evaluate(const LocalView& view, const EvalContext&) const override {
    return f_(double(view.degree(view.first())), double(view.degree(view.second())));
  }

 private:
  ProperFunction f_;
};

class DegreeLikeModel final : public PotentialModel {
 public:
  DegreeLikeModel(ProperFunction f, DegreeLikeFunction g) : f_(std::move(f)), g_(std::move(g)) {}
  std::string name() const override { return "degree_like"; }
  int radius() const override { return 1; }
  double evaluate(const LocalView& view, const EvalContext&) const override {
    return f_(g_at(view, view.first()), g_at(view, view.second()));
  }

 private:
  double g_at(const LocalView& view, NodeId c) const {
    auto nb = view.neighbors(c);
    for (NodeId& w : nb) w = view.label(w);
    return g_(view.label(c), nb);
  }

  ProperFunction f_;
  DegreeLikeFunction g_;
};

}  // namespace

Potential min_degree_potential(double alpha, double beta) {
  return Potential(std::make_shared<MinDegreeModel>(), alpha, beta);
}

Potential proper_degree_potential(const ProperFunction& f, double alpha, double beta,
                                  std::size_t samples) {
  validate_proper(f, samples);
  return Potential(std::make_shared<ProperDegreeModel>(f), alpha, beta);
}

Potential degree_like_potential(const ProperFunction& f, const DegreeLikeFunction& g, double alpha,
                                double beta, std::size_t samples) {
  validate_proper(f, samples);
  validate_degree_like(g, samples);
  return Potential(std::make_shared<DegreeLikeModel>(f, g), alpha, beta);
}

// ---------------------------------------------------------------------------
// Pair statistics potentials

double PairStatisticsModel::evaluate(const LocalView& view, const EvalContext&) const {
  const std::size_t cn = view.common_neighbor_count();
  const bool edge = view.centers_adjacent();
  return value(cn, edge, [&] { return view.common_neighbor_edge_count(); });
}

void PairStatisticsModel::evaluate_row(const DynGraph& g, const EvalContext&, NodeId u,
                                       RowValues& out) const {
  out.clear();
  RowScratch& s = row_scratch();
  s.prepare(g.node_count());
  const std::uint32_t adj = s.next_epoch();
  const auto nu = g.neighbors(u);
  for (NodeId w : nu) s.stamp[w] = adj;
  for (NodeId w : nu) {
    for (NodeId v : g.neighbors(w)) {
      if (v > u && s.count[v]++ == 0) s.touched.push_back(v);
    }
  }
  for (NodeId w : nu) {
    if (w > u && s.count[w] == 0) s.touched.push_back(w);
  }
  out.uniform_value = value(0, false, [] { return std::size_t{0}; });
  out.values.reserve(s.touched.size());
  for (NodeId v : s.touched) {
    const bool edge = s.stamp[v] == adj;
    out.values.emplace_back(
        v, value(s.count[v], edge, [&] { return edges_among_common_neighbors(g, u, v); }));
  }
  for (NodeId v : s.touched) s.count[v] = 0;
}

int rule110_branch(std::size_t cn, bool edge) {
  const std::size_t s = cn + (edge ? 1 : 0);
  if (s >= 66 && s <= 70) return 1;
  if (s == 71) return 2;
  if (cn >= 40 && cn <= 41) return 3;
  return 4;
}

double rule110_value(double beta, std::size_t cn, bool edge,
                     const std::function<std::size_t()>& ce) {
  const double e = edge ? 1.0 : 0.0;
  switch (rule110_branch(cn, edge)) {
    case 1:
      return beta + 60.0 + double(ce()) - double(cn);
    case 2:
      return beta + 12.0 - double(ce());
    case 3:
      return beta - e;
    default:
      return beta - 1.0 + e;
  }
}

namespace {

class CommunityModel final : public PairStatisticsModel {
 public:
  std::string name() const override { return "community"; }
  double value(std::size_t cn, bool edge, const std::function<std::size_t()>& ce) const override {
    return double(cn) + (edge ? 1.0 : 0.0) + double(ce());
  }
};

class Rule110Model final : public PairStatisticsModel {
 public:
  explicit Rule110Model(double beta) : beta_(beta) {}
  std::string name() const override { return "rule110"; }
  double value(std::size_t cn, bool edge, const std::function<std::size_t()>& ce) const override {
    return rule110_value(beta_, cn, edge, ce);
  }

  // Only branch 4 fires below 40 common neighbors, and it keeps an absent edge absent.
  bool has_change_filter() const override { return true; }
  bool may_change(const LocalView& view, const EvalContext&) const override {
    return view.centers_adjacent() || view.common_neighbor_count() >= 40;
  }

  std::vector<Pair> change_candidates(const DynGraph& g, const EvalContext&) const override {
    std::vector<Pair> out = g.edges();
    const auto n = static_cast<NodeId>(g.node_count());
    RowScratch& s = row_scratch();
    s.prepare(n);
    for (NodeId u = 0; u < n; ++u) {
      if (g.degree(u) < 40) continue;
      for (NodeId w : g.neighbors(u)) {
        for (NodeId v : g.neighbors(w)) {
          if (v > u && g.degree(v) >= 40 && s.count[v]++ == 0) s.touched.push_back(v);
        }
      }
      for (NodeId v : s.touched) {
        if (s.count[v] >= 40 && !g.has_edge(u, v)) out.emplace_back(u, v);
        s.count[v] = 0;
      }
      s.touched.clear();
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  double beta_;
};

}  // namespace

Potential community_potential(double alpha, double beta) {
  return Potential(std::make_shared<CommunityModel>(), alpha, beta);
}

Potential rule110_potential(double beta) {
  return Potential(std::make_shared<Rule110Model>(beta), beta, beta);
}

// ---------------------------------------------------------------------------
// Two-step merge

namespace {

struct HalfStep final : RoundState {
  DynGraph half;
};

// Radius-1 view of (a, b) read through an enclosing view.
class NestedView final : public LocalView {
 public:
  NestedView(const LocalView& outer, NodeId a, NodeId b) : outer_(outer), a_(a), b_(b) {}

  NodeId first() const override { return a_; }
  NodeId second() const override { return b_; }
  int radius() const override { return 1; }
  bool contains(NodeId w) const override {
    if (w == a_ || w == b_) return true;
    return outer_.contains(w) && (outer_.has_edge(a_, w) || outer_.has_edge(b_, w));
  }
  std::vector<NodeId> neighbors(NodeId w) const override {
    require_inside(w);
    auto nb = outer_.neighbors(w);
    if (w == a_ || w == b_) return nb;
    std::erase_if(nb, [&](NodeId x) { return !contains(x); });
    return nb;
  }
  std::size_t degree(NodeId w) const override { return neighbors(w).size(); }
  bool has_edge(NodeId x, NodeId y) const override {
    require_inside(x);
    require_inside(y);
    return outer_.has_edge(x, y);
  }
  NodeId label(NodeId w) const override { return outer_.label(w); }

 private:
  const LocalView& outer_;
  NodeId a_;
  NodeId b_;
};

// Radius-1 view of (x, y) in the half-step graph H, restricted to nodes within
// distance 2 of x or y in the pre-round graph G.
class AuxView final : public LocalView {
 public:
  AuxView(const DynGraph& g, const DynGraph& h, NodeId x, NodeId y) : g_(g), h_(h), x_(x), y_(y) {}

  NodeId first() const override { return x_; }
  NodeId second() const override { return y_; }
  int radius() const override { return 1; }
  bool contains(NodeId w) const override {
    if (w == x_ || w == y_) return true;
    if (!h_.valid_node(w)) return false;
    return (h_.has_edge(x_, w) || h_.has_edge(y_, w)) && in_support(w);
  }
  std::vector<NodeId> neighbors(NodeId w) const override {
    require_inside(w);
    std::vector<NodeId> out;
    const bool center = w == x_ || w == y_;
    for (NodeId z : h_.neighbors(w)) {
      if (center ? in_support(z) : contains(z)) out.push_back(z);
    }
    return out;
  }
  std::size_t degree(NodeId w) const override { return neighbors(w).size(); }
  bool has_edge(NodeId a, NodeId b) const override {
    require_inside(a);
    require_inside(b);
    return a != b && h_.has_edge(a, b);
  }
  std::vector<NodeId> common_neighbors() const override {
    auto out = common_neighbor_list(h_, x_, y_);
    std::erase_if(out, [&](NodeId w) { return !in_support(w); });
    return out;
  }
  std::size_t common_neighbor_count() const override { return common_neighbors().size(); }
  std::size_t common_neighbor_edge_count() const override {
    const auto common = common_neighbors();
    return edges_within(h_, common);
  }

 private:
  bool in_support(NodeId w) const { return within_two(g_, x_, w) || within_two(g_, y_, w); }

  const DynGraph& g_;
  const DynGraph& h_;
  NodeId x_;
  NodeId y_;
};

class MergedModel final : public PotentialModel {
 public:
  explicit MergedModel(Potential base) : base_(std::move(base)) {}

  std::string name() const override { return base_.name() + "_merged"; }
  int radius() const override { return 3; }

  double evaluate(const LocalView& view, const EvalContext& ctx) const override {
    if (const auto* st = dynamic_cast<const HalfStep*>(ctx.state)) {
      if (const auto* gv = dynamic_cast<const GraphBallView*>(&view)) {
        AuxView aux(gv->graph(), st->half, view.first(), view.second());
        return base_.evaluate(aux);
      }
    }
    const auto aux = local_aux(view);
    FragmentView fv(aux, 1);
    return base_.evaluate(fv);
  }

  bool has_change_filter() const override { return base_.has_change_filter(); }

  // Unchanged base state on the auxiliary graph means the half-step state
  // survives, so pairs whose edge exists in G or in the half step always pass.
  bool may_change(const LocalView& view, const EvalContext& ctx) const override {
    if (view.centers_adjacent()) return true;
    if (const auto* st = dynamic_cast<const HalfStep*>(ctx.state)) {
      if (const auto* gv = dynamic_cast<const GraphBallView*>(&view)) {
        AuxView aux(gv->graph(), st->half, view.first(), view.second());
        return aux.centers_adjacent() || base_.model().may_change(aux, {});
      }
    }
    const auto aux = local_aux(view);
    FragmentView fv(aux, 1);
    return fv.centers_adjacent() || base_.model().may_change(fv, {});
  }

  bool kept_edge(const LocalView& view, const EvalContext& ctx) const override {
    if (const auto* st = dynamic_cast<const HalfStep*>(ctx.state)) {
      if (dynamic_cast<const GraphBallView*>(&view)) {
        return st->half.has_edge(view.first(), view.second());
      }
    }
    const auto aux = local_aux(view);
    FragmentView fv(aux, 1);
    return fv.centers_adjacent();
  }

  const DynGraph& kept_graph(const DynGraph& g, const EvalContext& ctx) const override {
    const auto* st = dynamic_cast<const HalfStep*>(ctx.state);
    return st ? st->half : g;
  }

  // Edges of G and of the half step plus the base candidates on the half step. The aux
  // statistics never exceed their counterparts in H, so this is a superset.
  std::vector<Pair> change_candidates(const DynGraph& g, const EvalContext& ctx) const override {
    std::unique_ptr<RoundState> own;
    const auto* st = dynamic_cast<const HalfStep*>(ctx.state);
    if (!st) {
      own = prepare_round(g, true);
      st = static_cast<const HalfStep*>(own.get());
    }
    std::vector<Pair> out = g.edges();
    const auto half_edges = st->half.edges();
    out.insert(out.end(), half_edges.begin(), half_edges.end());
    auto extra = base_.model().change_candidates(st->half, {});
    out.insert(out.end(), extra.begin(), extra.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::unique_ptr<RoundState> prepare_round(const DynGraph& g, bool prune) const override {
    auto base_state = base_.model().prepare_round(g, prune);
    auto st = std::make_unique<HalfStep>();
    st->half = g;
    apply_delta(st->half, all_pairs_delta(g, base_, prune, EvalContext{base_state.get()}));
    return st;
  }

  void evaluate_row(const DynGraph& g, const EvalContext& ctx, NodeId u,
                    RowValues& out) const override {
    const auto* st = dynamic_cast<const HalfStep*>(ctx.state);
    const auto* stats = dynamic_cast<const PairStatisticsModel*>(&base_.model());
    if (!st || !stats) {
      PotentialModel::evaluate_row(g, ctx, u, out);
      return;
    }
    const DynGraph& h = st->half;
    out.clear();
    RowScratch& s = row_scratch();
    s.prepare(g.node_count());

    // stamp ball2_G(u)
    const std::uint32_t ball = s.next_epoch();
    s.stamp[u] = ball;
    for (NodeId w : g.neighbors(u)) {
      s.stamp[w] = ball;
      for (NodeId z : g.neighbors(w)) s.stamp[z] = ball;
    }
    std::vector<NodeId> outside;  // H-neighbors of u beyond distance 2 in G
    for (NodeId w : h.neighbors(u)) {
      if (s.stamp[w] != ball) {
        outside.push_back(w);
        continue;
      }
      for (NodeId v : h.neighbors(w)) {
        if (v > u && s.count[v]++ == 0) s.touched.push_back(v);
      }
    }
    for (NodeId w : outside) {
      for (NodeId v : h.neighbors(w)) {
        if (v > u && within_two(g, v, w) && s.count[v]++ == 0) s.touched.push_back(v);
      }
    }
    for (NodeId w : h.neighbors(u)) {
      if (w > u && s.count[w] == 0) s.touched.push_back(w);
    }
    out.uniform_value = stats->value(0, false, [] { return std::size_t{0}; });
    out.values.reserve(s.touched.size());
    for (NodeId v : s.touched) {
      const bool edge = h.has_edge(u, v);
      out.values.emplace_back(v, stats->value(s.count[v], edge, [&] {
        return AuxView(g, h, u, v).common_neighbor_edge_count();
      }));
    }
    for (NodeId v : s.touched) s.count[v] = 0;
    s.touched.clear();
  }

 private:
  // The auxiliary graph built from the view alone: nodes within distance 2 of
  // the centers, each pair advanced one base step using the radius-3 ball.
  BallFragment local_aux(const LocalView& view) const {
    std::vector<NodeId> support{view.first(), view.second()};
    std::vector<NodeId> frontier = support;
    for (int depth = 0; depth < 2; ++depth) {
      std::vector<NodeId> next;
      for (NodeId w : frontier) {
        for (NodeId z : view.neighbors(w)) next.push_back(z);
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      std::vector<NodeId> fresh;
      std::sort(support.begin(), support.end());
      std::set_difference(next.begin(), next.end(), support.begin(), support.end(),
                          std::back_inserter(fresh));
      support.insert(support.end(), fresh.begin(), fresh.end());
      frontier = std::move(fresh);
    }
    std::sort(support.begin(), support.end());

    DynGraph aux(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
      for (std::size_t j = i + 1; j < support.size(); ++j) {
        NestedView nv(view, support[i], support[j]);
        if (base_.next_edge(nv)) {
          aux.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
        }
      }
    }
    const auto local = [&](NodeId w) {
      return static_cast<NodeId>(std::lower_bound(support.begin(), support.end(), w) -
                                 support.begin());
    };
    BallFragment frag = induced_ball(aux, local(view.first()), local(view.second()), 1);
    for (NodeId& id : frag.to_original) id = view.label(support[id]);
    return frag;
  }

  Potential base_;
};

}  // namespace

Potential two_step_merge(const Potential& base) {
  if (base.radius() != 1) {
    throw ConfigError("two_step_merge needs a radius-1 base potential, got radius " +
                      std::to_string(base.radius()));
  }
  return Potential(std::make_shared<MergedModel>(base), base.alpha(), base.beta());
}

}  // namespace tnd
