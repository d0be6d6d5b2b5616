#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "tnd/schedulers.hpp"

using namespace tnd;

namespace {

std::vector<Pair> round_pairs(Scheduler& s, std::uint64_t t, const DynGraph& g, Rng& rng) {
  return s.next(t, g, rng).materialize();
}

// Every pair of an n-node graph appears in rounds [t, t+P) for all t < horizon.
void check_fair(Scheduler& s, std::size_t n, std::uint64_t horizon) {
  const auto period = s.fairness_period(n);
  REQUIRE(period.has_value());
  const DynGraph g(n);
  Rng rng(0);
  std::vector<std::vector<Pair>> rounds;
  for (std::uint64_t t = 0; t < horizon + *period; ++t) rounds.push_back(round_pairs(s, t, g, rng));
  for (std::uint64_t t = 0; t < horizon; ++t) {
    std::set<Pair> seen;
    for (std::uint64_t k = 0; k < *period; ++k) seen.insert(rounds[t + k].begin(), rounds[t + k].end());
    REQUIRE(seen.size() == pair_count(n));
  }
}

}  // namespace

TEST_CASE("interaction set invariants") {
  CHECK(InteractionSet::all_pairs(5).size() == 10);
  CHECK(InteractionSet::all_pairs(5).materialize().size() == 10);
  CHECK(InteractionSet::of({Pair(2, 1), Pair(0, 1)}, 3).pairs() == std::vector<Pair>{Pair(0, 1), Pair(1, 2)});
  CHECK_THROWS(InteractionSet::of({Pair(1, 1)}, 3));
  CHECK_THROWS(InteractionSet::of({Pair(0, 1), Pair(1, 0)}, 3));
  CHECK_THROWS(InteractionSet::of({Pair(0, 3)}, 3));
  CHECK(InteractionSet::all_pairs(4).contains(Pair(1, 3)));
}

TEST_CASE("complete scheduler") {
  auto s = complete_scheduler();
  Rng rng(0);
  CHECK(round_pairs(*s, 0, DynGraph(3), rng) == std::vector<Pair>{Pair(0, 1), Pair(0, 2), Pair(1, 2)});
  CHECK(round_pairs(*s, 7, DynGraph(2), rng) == std::vector<Pair>{Pair(0, 1)});
  CHECK(s->next(0, DynGraph(5), rng).size() == 10);
  CHECK(s->fairness_period(5) == 1);
  check_fair(*s, 6, 5);
}

TEST_CASE("current edges scheduler") {
  auto s = current_edges_scheduler();
  Rng rng(0);
  CHECK(s->next(0, DynGraph(4), rng).empty());
  CHECK(round_pairs(*s, 0, oracle::clique(3), rng) == oracle::clique(3).edges());
  CHECK_FALSE(s->fairness_period(3).has_value());
}

TEST_CASE("uniform random scheduler") {
  CHECK_THROWS_AS(uniform_random_scheduler(1), ConfigError);
  auto a = uniform_random_scheduler(7);
  auto b = uniform_random_scheduler(7);
  Rng ra(42);
  Rng rb(42);
  const DynGraph g(7);
  for (int t = 0; t < 500; ++t) REQUIRE(round_pairs(*a, t, g, ra) == round_pairs(*b, t, g, rb));

  auto two = uniform_random_scheduler(2);
  for (int t = 0; t < 20; ++t) REQUIRE(round_pairs(*two, t, DynGraph(2), ra) == std::vector<Pair>{Pair(0, 1)});

  auto five = uniform_random_scheduler(5);
  std::map<Pair, int> count;
  const int draws = 100000;
  Rng rng(2024);
  for (int t = 0; t < draws; ++t) {
    const auto p = round_pairs(*five, t, DynGraph(5), rng);
    REQUIRE(p.size() == 1);
    ++count[p[0]];
  }
  REQUIRE(count.size() == 10);
  double chi2 = 0;
  for (const auto& [p, c] : count) {
    CHECK(std::abs(c / double(draws) - 0.1) <= 0.01);
    chi2 += (c - draws / 10.0) * (c - draws / 10.0) / (draws / 10.0);
  }
  // 9 degrees of freedom, 0.999 quantile
  CHECK(chi2 < 27.88);
  CHECK(five->singleton());
}

TEST_CASE("fair round robin scheduler") {
  CHECK_THROWS_AS(fair_round_robin_scheduler(0), ConfigError);
  auto b1 = fair_round_robin_scheduler(1);
  CHECK(b1->fairness_period(3) == 3);
  check_fair(*b1, 3, 9);

  auto b6 = fair_round_robin_scheduler(6);
  CHECK(b6->fairness_period(4) == 1);
  Rng rng(0);
  CHECK(b6->next(0, DynGraph(4), rng).size() == 6);
  check_fair(*b6, 4, 4);

  auto b4 = fair_round_robin_scheduler(4);
  CHECK(b4->fairness_period(4) == 2);
  check_fair(*b4, 4, 10);
  auto b100 = fair_round_robin_scheduler(100);
  CHECK(b100->fairness_period(30) == 5);
  check_fair(*b100, 30, 12);
}

TEST_CASE("scripted scheduler") {
  auto frozen = scripted_scheduler({{}}, true, false, 4);
  CHECK_FALSE(frozen->fairness_period(4).has_value());
  Rng rng(0);
  CHECK(frozen->next(3, DynGraph(4), rng).empty());
  CHECK_THROWS_AS(scripted_scheduler({{}}, true, true, 4), ConfigError);

  auto three = scripted_scheduler({{Pair(0, 1)}, {Pair(0, 2)}, {Pair(1, 2)}}, true, true, 3);
  CHECK(three->fairness_period(3) == 3);
  check_fair(*three, 3, 9);

  try {
    scripted_scheduler({{Pair(0, 1)}, {Pair(1, 2)}}, true, true, 3);
    FAIL("missing coverage accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("0-2") != std::string::npos);
  }
  CHECK_THROWS_AS(scripted_scheduler({}, true, false, 3), ConfigError);

  auto once = scripted_scheduler({{Pair(0, 1)}, {Pair(1, 2)}}, false, false, 3);
  CHECK(once->next(0, DynGraph(3), rng).size() == 1);
  CHECK(once->next(5, DynGraph(3), rng).empty());
}

TEST_CASE("adversarial fair script defers the late pair") {
  const Pair late(2, 5);
  const auto script = adversarial_fair_script(8, 7, late, 3);
  REQUIRE(script.size() == 7);
  for (std::size_t r = 0; r + 1 < script.size(); ++r) {
    REQUIRE(std::find(script[r].begin(), script[r].end(), late) == script[r].end());
  }
  REQUIRE(std::find(script.back().begin(), script.back().end(), late) != script.back().end());
  auto s = scripted_scheduler(script, true, true, 8);
  check_fair(*s, 8, 14);
}

TEST_CASE("social scheduler rules") {
  SocialProfile all = SocialProfile::uniform(4, 1.0, 3);
  for (NodeId u = 0; u < 4; ++u) {
    for (NodeId v = u + 1; v < 4; ++v) all.add_enemy(u, v);
  }
  auto s = social_scheduler(all, 10);
  Rng rng(0);
  CHECK(s->next(0, oracle::path(4), rng).empty());

  // 0 and 1 adjacent with common friends 2, 3
  const DynGraph g = oracle::with_edges(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {3, 4}});
  auto strong = social_scheduler(SocialProfile::uniform(5, 1.0, 1), 1);
  const auto c = strong->next(0, g, rng);
  CHECK_FALSE(c.contains(Pair(0, 1)));
  CHECK(c.contains(Pair(0, 2)));       // adjacent, one common neighbor
  CHECK(c.contains(Pair(0, 4)));       // distance 2 with x = 1 each
  CHECK_FALSE(c.contains(Pair(2, 4)));  // distance 3 > 1 + 1
  auto wide = social_scheduler(SocialProfile::uniform(5, 1.0, 1), 2);
  CHECK(wide->next(0, g, rng).contains(Pair(0, 1)));

  SocialProfile mixed = SocialProfile::uniform(5, 1.0, 1);
  mixed.extroversion[2] = 2;
  CHECK(social_scheduler(mixed, 1)->next(0, g, rng).contains(Pair(2, 4)));
}

TEST_CASE("social profile validation") {
  SocialProfile p = SocialProfile::uniform(3, 1.0, 1);
  p.niceness[1] = -0.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  SocialProfile q = SocialProfile::uniform(3, 1.0, 1);
  q.enemies[0].push_back(1);
  CHECK_THROWS_AS(q.validate(), ConfigError);
  SocialProfile r = SocialProfile::uniform(3, 1.0, 1);
  r.add_enemy(0, 2);
  CHECK(r.is_enemy(2, 0));
  CHECK_NOTHROW(r.validate());
}
