#include <doctest.h>

#include <cmath>
#include <functional>

#include "oracles.hpp"
#include "tnd/engine.hpp"
#include "tnd/potentials.hpp"
#include "tnd/schedulers.hpp"

using namespace tnd;

namespace {

using Value = std::function<double(const oracle::Matrix&, std::size_t, std::size_t)>;

double r110(double beta, int cn, int e, int ce) {
  const int s = cn + e;
  if (s >= 66 && s <= 70) return beta + 60 + ce - cn;
  if (s == 71) return beta + 12 - ce;
  if (cn >= 40 && cn <= 41) return beta - e;
  return beta - 1 + e;
}

Value min_degree_value() {
  return [](const oracle::Matrix& a, std::size_t u, std::size_t v) {
    return double(std::min(oracle::degree(a, u), oracle::degree(a, v)));
  };
}

Value community_value() {
  return [](const oracle::Matrix& a, std::size_t u, std::size_t v) {
    return double(oracle::cn(a, u, v) + a[u][v] + oracle::ce(a, u, v));
  };
}

Value proper_value(std::function<double(double, double)> f) {
  return [f](const oracle::Matrix& a, std::size_t u, std::size_t v) {
    return f(oracle::degree(a, u), oracle::degree(a, v));
  };
}

Value rule110_oracle(double beta) {
  return [beta](const oracle::Matrix& a, std::size_t u, std::size_t v) {
    return r110(beta, oracle::cn(a, u, v), a[u][v], oracle::ce(a, u, v));
  };
}

// One synchronous round over all pairs.
oracle::Matrix brute_step(const oracle::Matrix& a, const Value& value, double alpha, double beta) {
  oracle::Matrix b = a;
  for (std::size_t u = 0; u < a.size(); ++u) {
    for (std::size_t v = u + 1; v < a.size(); ++v) {
      const double x = value(a, u, v);
      const char next = x < alpha ? 0 : (x >= beta ? 1 : a[u][v]);
      b[u][v] = b[v][u] = next;
    }
  }
  return b;
}

DynGraph step_all(const DynGraph& g, const Potential& p, bool prune) {
  DynGraph h = g;
  apply_delta(h, step(g, p, InteractionSet::all_pairs(g.node_count()), prune));
  return h;
}

// Every pair listed explicitly: per-pair views without round state.
DynGraph step_listed(const DynGraph& g, const Potential& p) {
  DynGraph h = g;
  const auto all = InteractionSet::all_pairs(g.node_count()).materialize();
  apply_delta(h, step(g, p, InteractionSet::of(all, g.node_count()), false));
  return h;
}

class ConstantModel final : public PotentialModel {
 public:
  explicit ConstantModel(double c) : c_(c) {}
  std::string name() const override { return "constant"; }
  int radius() const override { return 1; }
  double evaluate(const LocalView&, const EvalContext&) const override { return c_; }

 private:
  double c_;
};

}  // namespace

TEST_CASE("min degree potential examples") {
  const Potential p = min_degree_potential(1, 5);
  CHECK(p.evaluate(oracle::path(3), 0, 1) == 1);
  CHECK(p.evaluate(oracle::clique(3), 0, 2) == 2);
  CHECK(p.evaluate(oracle::star(5), 0, 3) == 1);
  CHECK(p.radius() == 1);
  CHECK_THROWS_AS(min_degree_potential(3, 2), ConfigError);
  CHECK_THROWS_AS(min_degree_potential(NAN, 2), ConfigError);
}

TEST_CASE("proper degree potential examples") {
  CHECK(proper_degree_potential(proper_sum(), 0, 10).evaluate(oracle::ring(4), 0, 2) == 4);
  CHECK(proper_degree_potential(proper_product(), 0, 10).evaluate(oracle::clique(4), 1, 3) == 9);
  CHECK_THROWS_AS(proper_degree_potential(proper_sum(), 5, 1), ConfigError);
  CHECK_THROWS_AS(proper_by_name("median"), ConfigError);

  std::mt19937_64 rng(2);
  const Potential pmin = proper_degree_potential(proper_min(), 0, 10);
  const Potential mind = min_degree_potential(0, 10);
  for (int t = 0; t < 10; ++t) {
    const DynGraph g = oracle::random_graph(9, 0.4, rng);
    for (NodeId u = 0; u < 9; ++u) {
      for (NodeId v = u + 1; v < 9; ++v) REQUIRE(pmin.evaluate(g, u, v) == mind.evaluate(g, u, v));
    }
  }
}

TEST_CASE("proper function validation rejects bad functions") {
  for (const char* name : {"sum", "min", "max", "product"}) CHECK_NOTHROW(validate_proper(proper_by_name(name)));
  CHECK_THROWS_AS(validate_proper({"diff", [](double x, double y) { return x - y; }}), ConfigError);
  CHECK_THROWS_AS(validate_proper({"neg", [](double x, double y) { return -x - y; }}), ConfigError);
  CHECK_THROWS_AS(proper_degree_potential({"neg", [](double x, double y) { return -x - y; }}, 0, 1),
                  ConfigError);
}

TEST_CASE("degree-like potential examples") {
  const Potential p = degree_like_potential(proper_sum(), degree_plus_one_g(), 0, 10);
  CHECK(p.evaluate(DynGraph(2), 0, 1) == 2);
  const Potential pd = degree_like_potential(proper_sum(), degree_g(), 0, 10);
  const Potential pp = proper_degree_potential(proper_sum(), 0, 10);
  std::mt19937_64 rng(4);
  const DynGraph g = oracle::random_graph(10, 0.3, rng);
  for (NodeId u = 0; u < 10; ++u) {
    for (NodeId v = u + 1; v < 10; ++v) REQUIRE(pd.evaluate(g, u, v) == pp.evaluate(g, u, v));
  }
  DegreeLikeFunction anti{"anti", [](NodeId, std::span<const NodeId> nb) { return -double(nb.size()); }, 16};
  CHECK_THROWS_AS(validate_degree_like(anti), ConfigError);
  CHECK_THROWS_AS(degree_like_potential(proper_sum(), anti, 0, 1), ConfigError);
}

TEST_CASE("community potential examples") {
  const Potential p = community_potential(0, 10);
  CHECK(p.evaluate(oracle::clique(4), 0, 1) == 4);
  CHECK(p.evaluate(DynGraph(2), 0, 1) == 0);
  CHECK(p.evaluate(oracle::ring(5), 0, 1) == 1);
}

TEST_CASE("rule110 potential branches") {
  const double b = 100;
  CHECK(rule110_value(b, 70, false, [] { return std::size_t{8}; }) == b - 2);
  CHECK(rule110_value(b, 40, true, [] { return std::size_t{0}; }) == b - 1);
  CHECK(rule110_value(b, 20, true, [] { return std::size_t{0}; }) == b);
  const Potential p = rule110_potential(b);
  CHECK(p.alpha() == b);
  CHECK(p.beta() == b);
  CHECK(p.has_change_filter());

  for (int cn = 0; cn <= 120; ++cn) {
    for (int e = 0; e <= 1; ++e) {
      const int s = cn + e;
      const bool b1 = s >= 66 && s <= 70;
      const bool b2 = s == 71;
      REQUIRE_FALSE((b1 && b2));
      const int expect = b1 ? 1 : b2 ? 2 : (cn >= 40 && cn <= 41) ? 3 : 4;
      REQUIRE(rule110_branch(cn, e) == expect);
      for (int ce = 0; ce <= 30; ++ce) {
        REQUIRE(rule110_value(b, cn, e, [ce] { return std::size_t(ce); }) == r110(b, cn, e, ce));
      }
    }
  }
}

TEST_CASE("potentials agree with brute force and are symmetric") {
  std::mt19937_64 rng(21);
  struct Case {
    Potential p;
    Value v;
  };
  const std::vector<Case> cases{
      {min_degree_potential(2, 20), min_degree_value()},
      {proper_degree_potential(proper_sum(), 5, 5), proper_value(std::plus<double>())},
      {proper_degree_potential(proper_product(), 4, 9),
       proper_value([](double x, double y) { return x * y; })},
      {proper_degree_potential(proper_max(), 3, 3),
       proper_value([](double x, double y) { return std::max(x, y); })},
      {community_potential(1, 3), community_value()},
      {rule110_potential(0), rule110_oracle(0)},
  };
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 4 + t % 9;
    const DynGraph g = oracle::random_graph(n, 0.15 + 0.05 * t, rng);
    const auto a = oracle::matrix(g);
    for (const auto& c : cases) {
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
          if (u == v) continue;
          REQUIRE(c.p.evaluate(g, u, v) == c.v(a, u, v));
          REQUIRE(c.p.evaluate(g, u, v) == c.p.evaluate(g, v, u));
        }
      }
    }
  }
}

TEST_CASE("proper degree potential is monotone in the degree") {
  std::mt19937_64 rng(8);
  for (const char* name : {"sum", "min", "max", "product"}) {
    const Potential p = proper_degree_potential(proper_by_name(name), 0, 1);
    for (int t = 0; t < 5; ++t) {
      const DynGraph g = oracle::random_graph(12, 0.35, rng);
      for (NodeId u = 0; u < 12; ++u) {
        for (NodeId w = 0; w < 12; ++w) {
          if (u == w || g.degree(u) < g.degree(w)) continue;
          for (NodeId x = 0; x < 12; ++x) {
            if (x == u || x == w) continue;
            REQUIRE(p.evaluate(g, u, x) >= p.evaluate(g, w, x));
          }
        }
      }
    }
  }
}

TEST_CASE("all-pairs round equals the brute-force round") {
  std::mt19937_64 rng(31);
  struct Case {
    Potential p;
    Value v;
  };
  const std::vector<Case> cases{
      {min_degree_potential(2, 9), min_degree_value()},
      {proper_degree_potential(proper_sum(), 6, 6), proper_value(std::plus<double>())},
      {community_potential(1, 2), community_value()},
      {community_potential(0, 0), community_value()},
      {rule110_potential(1), rule110_oracle(1)},
  };
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 3 + t % 12;
    const DynGraph g = oracle::random_graph(n, 0.1 + 0.04 * t, rng);
    for (const auto& c : cases) {
      const auto expect =
          oracle::from_matrix(brute_step(oracle::matrix(g), c.v, c.p.alpha(), c.p.beta()));
      REQUIRE(step_all(g, c.p, false) == expect);
      REQUIRE(step_all(g, c.p, true) == expect);
      REQUIRE(step_listed(g, c.p) == expect);
    }
  }
}

TEST_CASE("gadget potential: pruned round equals unpruned on dense graphs") {
  std::mt19937_64 rng(17);
  const Potential p = rule110_potential(100);
  for (int t = 0; t < 6; ++t) {
    const DynGraph g = oracle::random_graph(55 + t, 0.8 + 0.02 * t, rng);
    const auto expect = oracle::from_matrix(brute_step(oracle::matrix(g), rule110_oracle(100), 100, 100));
    REQUIRE(step_all(g, p, false) == expect);
    REQUIRE(step_all(g, p, true) == expect);
  }
}

TEST_CASE("merged potential rejects wide bases and passes constants through") {
  const Potential merged = two_step_merge(community_potential(1, 2));
  CHECK(merged.radius() == 3);
  CHECK(merged.name() == "community_merged");
  CHECK_THROWS_AS(two_step_merge(merged), ConfigError);

  const Potential c(std::make_shared<ConstantModel>(7), 7, 7);
  const Potential mc = two_step_merge(c);
  std::mt19937_64 rng(1);
  const DynGraph g = oracle::random_graph(9, 0.3, rng);
  for (NodeId u = 0; u < 9; ++u) {
    for (NodeId v = u + 1; v < 9; ++v) REQUIRE(mc.evaluate(g, u, v) == 7);
  }
}

TEST_CASE("merged potential equals two half steps when changes stay local") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> thr(0, 5);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 3 + t % 8;
    const DynGraph g = oracle::random_graph(n, 0.2 + 0.01 * t, rng);
    const auto a = oracle::matrix(g);
    // additions need beta >= 1 (a common neighbor); deletion-only otherwise
    const int lo = thr(rng);
    const int hi = lo + 1 + thr(rng);
    struct Case {
      Potential p;
      Value v;
    };
    const std::vector<Case> cases{
        {community_potential(lo, hi), community_value()},
        {community_potential(hi, hi), community_value()},
        {min_degree_potential(lo, double(std::max<std::size_t>(n, lo + 1))), min_degree_value()},
        {proper_degree_potential(proper_sum(), lo + 1, 3.0 * n), proper_value(std::plus<double>())},
    };
    for (const auto& c : cases) {
      const auto half = brute_step(a, c.v, c.p.alpha(), c.p.beta());
      const auto expect = oracle::from_matrix(brute_step(half, c.v, c.p.alpha(), c.p.beta()));
      const Potential m = two_step_merge(c.p);
      REQUIRE(step_all(g, m, false) == expect);
      REQUIRE(step_listed(g, m) == expect);
    }
  }
}
