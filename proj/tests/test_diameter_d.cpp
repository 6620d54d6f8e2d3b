#include <doctest.h>

#include <cmath>

#include "mbg/diameter_d.hpp"
#include "mbg/errors.hpp"
#include "mbg/heuristics.hpp"
#include "mbg/transcript.hpp"

using namespace mbg;

namespace {

// (m-1) D^m - m D^(m-1) + 1 in doubles, small inputs only
double bracket_ref(int delta, int m) {
  return (m - 1) * std::pow(delta, m) - m * std::pow(delta, m - 1) + 1;
}

}  // namespace

TEST_CASE("dd parameters at n=1024, d=4") {
  const auto p = dd_params(1024, 4);
  CHECK(p.half == 2);
  CHECK(p.beta == doctest::Approx(std::sqrt(2 * 1024 * std::log(2.0) / std::log(1024.0))));
  CHECK(p.beta == doctest::Approx(14.31).epsilon(1e-3));
  CHECK(p.b == doctest::Approx(3.58).epsilon(2e-3));
  CHECK(p.r.size() == 2);
  CHECK(p.r[0] == 1);
  CHECK(p.r1_constant == 6);
  CHECK(dd_params(1024, 4, 7).r[1] < p.r[1]);
  CHECK(p.to_json()["beta"].get<double>() == p.beta);
  CHECK_THROWS_AS(dd_params(1024, 2), Error);
  CHECK_THROWS_AS(dd_params(10, 3), Error);
}

TEST_CASE("dd parameter identities") {
  for (int e = 10; e <= 30; e += 4) {
    const double n = std::pow(2.0, e);
    for (int d = 3; d <= 8; ++d) {
      const auto p = dd_params(n, d);
      // (ln n / (n ln 2)) beta^half = 2
      CHECK(std::log(n) / (n * std::log(2.0)) * std::pow(p.beta, p.half) == doctest::Approx(2.0));
      // b = n ln2 / (half ln n) / beta, so half b ln n / (n ln 2) = 1/beta
      CHECK(p.half * p.b * std::log(n) / (n * std::log(2.0)) == doctest::Approx(1 / p.beta));
      for (int i = 2; i < p.half; ++i) CHECK(dd_next_r(p, i) == p.r[static_cast<std::size_t>(i)]);
      CHECK(p.theorem_bound);
    }
  }
}

TEST_CASE("claim 2 values") {
  CHECK(claim2_f(2, 4, 1) == 18);
  CHECK(claim2_f(2, 4, 2) == 10);
  CHECK(claim2_bound(2, 4) == 18);
  for (int delta = 2; delta <= 7; ++delta)
    for (int m = 2; m <= 12; ++m)
      for (int k = 1; k < m; ++k) CHECK(claim2_f(delta, m, k) == claim2_f(delta, m, m - k));
  CHECK(claim2_check({2, 10}, {2, 20}));
  CHECK_THROWS_AS(claim2_f(1, 4, 1), Error);
  CHECK_THROWS_AS(claim2_bound(1, 4), Error);
  CHECK_THROWS_AS(claim2_f(2, 4, 4), Error);
  CHECK_THROWS_AS(claim2_f(2, 4, 0), Error);
  // exact integers well past double precision
  CHECK(claim2_f(10, 20, 1).str().size() > 17);
}

TEST_CASE("block budget") {
  CHECK(block_budget(3, 3).budget == 8);
  for (int delta = 2; delta <= 6; ++delta) {
    for (int d = 2; d <= 6; ++d) {
      const auto bb = block_budget(delta, d);
      const double sq = (delta - 1.0) * (delta - 1.0);
      CHECK(static_cast<double>(bb.budget) == std::floor((bracket_ref(delta, d) + sq) / sq));
      CHECK(bb.budget >= 0);
    }
  }
  CHECK_THROWS_AS(block_budget(1, 3), Error);
}

TEST_CASE("blocking case classification") {
  // u=0, v=1, x=2, y=3 with 0-2, 3-1 and Maker's new edge 2-3
  Graph g(6);
  g.add_edge(0, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  int which = 0, i = -1, j = -1;
  auto demand = dd_blocking_demand(g, 3, 0, 1, Edge(2, 3), &which, &i, &j);
  CHECK(which == 1);
  CHECK(i == 1);
  CHECK(j == 1);
  // d=3: x side reaches B_1(v), y side reaches B_1(u)
  CHECK(std::find(demand.begin(), demand.end(), Edge(1, 2)) != demand.end());
  CHECK(std::find(demand.begin(), demand.end(), Edge(0, 3)) != demand.end());
  // reversed orientation classifies the same way
  dd_blocking_demand(g, 3, 0, 1, Edge(3, 2), &which, &i, &j);
  CHECK(which == 1);
  CHECK(i == 1);

  // x adjacent to both: case 2
  Graph h(6);
  h.add_edge(0, 2);
  h.add_edge(1, 2);
  h.add_edge(2, 4);
  dd_blocking_demand(h, 4, 0, 1, Edge(2, 4), &which, &i, &j);
  CHECK(which == 2);
  CHECK(i == 1);
  CHECK(j == 1);

  // claiming the demand keeps the pair blocked
  Graph m(8);
  m.add_edge(0, 2);
  auto req = dd_blocking_demand(m, 3, 0, 1, Edge(0, 2));
  CHECK(std::find(req.begin(), req.end(), Edge(1, 2)) != req.end());
  CHECK(blocking_sound(m, 3, 0, 1));
  m.add_edge(1, 2);
  CHECK_FALSE(blocking_sound(m, 3, 0, 1));
}

TEST_CASE("dd breaker bias") {
  const auto bb = dd_breaker_bias(400, 3);
  CHECK(bb.b1 == 35);
  CHECK(bb.b == 139);
  CHECK(bb.b2 == 104);
  CHECK(dd_breaker_bias(400, 3, 3).b == 104);
  CHECK_THROWS_AS(dd_breaker_bias(400, 2), Error);
}

TEST_CASE("dd breaker a=1 smoke") {
  const int n = 80;
  const auto bias = dd_breaker_bias(n, 3);
  MatchOptions o;
  o.check_invariants = true;
  o.early_stop = false;
  for (int h = 0; h < 3; ++h) {
    std::unique_ptr<Strategy> maker;
    if (h == 0) maker = std::make_unique<RandomPlayer>(7);
    if (h == 1) maker = std::make_unique<GreedyPathMaker>();
    if (h == 2) maker = std::make_unique<GreedyDegreeMaker>();
    DdBreakerA1 br(3, bias.b1);
    auto t = run_match(GameState(n, 1, bias.b), *maker, br, Property::none(), o);
    CHECK(t.violations() == 0);
    CHECK(br.budget_flags() == 0);
    CHECK(br.delfinal_flags() == 0);
    const auto end = replay_transcript(t).state;
    CHECK_FALSE(dist(end.maker_graph(), br.pair().u, br.pair().v).at_most(3));
    CHECK(end.owner(br.pair()) == Owner::Breaker);
  }
  DdBreakerA1 wrong(3, 2);
  CHECK_THROWS_AS(wrong.select(GameState(20, 2, 4)), Error);
}

TEST_CASE("dd maker schedule and tiny game") {
  DdPlan plan;
  plan.d = 4;
  plan.half = 2;
  plan.effective_b = 2;
  plan.r1 = 2;
  plan.exp_games = {{2, 4}};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    DdMaker mk(plan);
    RandomPlayer br(seed);
    MatchOptions o;
    o.seed = seed;
    o.early_stop = false;
    auto t = run_match(GameState(10, 1, 1), mk, br, Property::diameter_at_most(4), o);
    CHECK(t.verdict);
    if (seed == 0) {
      CHECK(t.claims.front().player == Player::Maker);
      CHECK(t.claims.front().edges.front() == Edge(0, 1));
      for (const auto& a : t.annotations) {
        if (a.label == "subgame") CHECK(a.data["game"] == (a.round - 1) % 2 + 1);
      }
    }
  }
  DdMaker wrong(4);
  CHECK_THROWS_AS(wrong.select(GameState(20, 2, 1)), Error);
  CHECK_THROWS_AS(dd_plan(40, 4, 1), Error);
}

TEST_CASE("dd breaker a>=2 and ball bound") {
  CHECK(dd_breaker_a2_bias(1000, 3) == 400);
  for (int d = 3; d <= 6; ++d) {
    for (double n : {1e3, 1e5, 1e8}) {
      const double delta = 2.0 / 3 * std::pow(n, 1.0 / d);
      CHECK(2 * std::pow(delta, d) < 8.0 / 9 * n * (1 + 1e-12));
    }
  }
  Graph star(7);
  for (Vertex v = 1; v < 7; ++v) star.add_edge(0, v);
  CHECK(ball_bound_holds(star, 3));
  Graph cycle(12);
  for (Vertex v = 0; v < 12; ++v) cycle.add_edge(v, (v + 1) % 12);
  CHECK(ball_bound_holds(cycle, 2));

  const int n = 60;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    RandomPlayer mk(seed);
    DdBreakerA2 br(3);
    MatchOptions o;
    o.seed = seed;
    o.early_stop = false;
    auto t = run_match(GameState(n, 2, 12), mk, br, Property::none(), o);
    const auto end = replay_transcript(t).state;
    const auto cap = mindeg_params(n, 12, 2);
    const auto prof = degree_profile(end.maker_graph());
    CHECK(prof.max <= n - 1 - std::floor(cap.d_max));
    const int delta = prof.max;
    if (delta >= 4) CHECK(ball_bound_holds(end.maker_graph(), 3));
  }
}
