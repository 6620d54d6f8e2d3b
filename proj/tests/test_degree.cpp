#include <doctest.h>

#include <cmath>

#include "mbg/degree.hpp"
#include "mbg/heuristics.hpp"
#include "mbg/solver.hpp"
#include "mbg/transcript.hpp"

using namespace mbg;

namespace {

// w(A_v) by the defining product, no logs
double direct_weight(const MinDegParams& p, int X, int Y) {
  return std::pow(1 + p.play_lambda1, Y - (p.b * p.n / (p.a + p.b) + p.k)) *
         std::pow(1 - p.play_lambda2, X - (p.a * p.n / (p.a + p.b) - p.k));
}

Edge brute_best(const GameState& s, const MinDegParams& p) {
  Edge best;
  double top = -1;
  for (Position q = 0; q < s.edge_total(); ++q) {
    if (s.owner(q) != Owner::Unclaimed) continue;
    const Edge e = s.edge(q);
    const double w = direct_weight(p, s.degree(Player::Maker, e.u), s.degree(Player::Breaker, e.u)) +
                     direct_weight(p, s.degree(Player::Maker, e.v), s.degree(Player::Breaker, e.v));
    if (w > top * (1 + 1e-12)) {
      top = w;
      best = e;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("mindeg params") {
  auto p = mindeg_params(100, 1, 1);
  CHECK(p.lambda2 == doctest::Approx(0.2146).epsilon(1e-3));
  CHECK(p.lambda1 == doctest::Approx(p.lambda2).epsilon(1e-12));
  CHECK(p.k == doctest::Approx(45.53).epsilon(1e-3));
  CHECK(p.d_max == doctest::Approx(4.47).epsilon(2e-3));
  CHECK(p.nonvacuous);
  CHECK(p.t0 < 1);
  CHECK(p.guaranteed());
  // a = b = 1 against a second evaluation of the defining expression
  const double ln = std::log(100.0);
  CHECK(std::abs(p.d_max - (50 - 6.0 / std::pow(2.0, 1.5) * std::sqrt(100 * ln))) < 1e-12);
  const double t0 = 100 * std::pow(1 + p.lambda1, -50 - p.k) * std::pow(1 - p.lambda2, -50 + p.k);
  CHECK(p.t0 == doctest::Approx(t0).epsilon(1e-12));

  auto v = mindeg_params(100, 1, 50);
  CHECK(v.d_max < 0);
  CHECK_FALSE(v.nonvacuous);
  CHECK_FALSE(v.guaranteed());

  auto big = mindeg_params(30, 5, 1);
  CHECK_FALSE(big.bias_ok);
  CHECK_THROWS_AS(mindeg_params(2, 1, 1), Error);
  for (int n : {50, 100, 400})
    for (double a : {1.0, 2.0, 3.0})
      for (double b : {1.0, 2.0, 4.5}) {
        auto q = mindeg_params(n, a, b);
        CHECK(std::pow(1 + q.play_lambda1, b) <= (1 + a * q.play_lambda2) * (1 + 1e-9));
      }
}

TEST_CASE("mindeg weights") {
  auto p = mindeg_params(40, 2, 3);
  GameState s(40, 2, 3);
  RandomPlayer r(9);
  for (int t = 0; t < 30; ++t) s.apply_claim_positions(s.to_move(), r.select(s));
  DegreeWeights w(p, Player::Maker);
  w.refresh(s);
  for (Vertex v = 0; v < 40; ++v) {
    CHECK(w.mine(v) == s.degree(Player::Maker, v));
    CHECK(std::exp(w.log_weight(v)) ==
          doctest::Approx(direct_weight(p, s.degree(Player::Maker, v), s.degree(Player::Breaker, v))).epsilon(1e-9));
  }
  double T = 0;
  for (Vertex v = 0; v < 40; ++v) T += std::exp(w.log_weight(v));
  CHECK(mindeg_potential(s, p) == doctest::Approx(T).epsilon(1e-12));
}

TEST_CASE("mindeg maker selection") {
  GameState fresh(10, 1, 1);
  auto p = mindeg_params(10, 1, 1);
  DegreeWeights w(p, Player::Maker);
  w.refresh(fresh);
  CHECK(mindeg_select(fresh, w, 1) == std::vector<Position>{fresh.index(0, 1)});

  // Breaker floods vertex 7
  GameState s(12, 1, 3);
  auto q = mindeg_params(12, 1, 3);
  s.apply_claim(Player::Maker, std::vector<Edge>{{0, 1}});
  s.apply_claim(Player::Breaker, std::vector<Edge>{{7, 2}, {7, 3}, {7, 4}});
  s.apply_claim(Player::Maker, std::vector<Edge>{{2, 3}});
  s.apply_claim(Player::Breaker, std::vector<Edge>{{7, 5}, {7, 6}, {7, 8}});
  DegreeWeights wq(q, Player::Maker);
  wq.refresh(s);
  Vertex heaviest = 0;
  for (Vertex v = 1; v < 12; ++v)
    if (wq.log_weight(v) > wq.log_weight(heaviest)) heaviest = v;
  CHECK(heaviest == 7);
  const Edge e = s.edge(mindeg_select(s, wq, 1).front());
  CHECK((e.u == 7 || e.v == 7));

  GameState last(3, 1, 1);
  last.apply_claim(Player::Maker, std::vector<Edge>{{0, 1}});
  last.apply_claim(Player::Breaker, std::vector<Edge>{{0, 2}});
  DegreeWeights wl(mindeg_params(3, 1, 1), Player::Maker);
  wl.refresh(last);
  CHECK(mindeg_select(last, wl, 1) == std::vector<Position>{last.index(1, 2)});
}

TEST_CASE("mindeg selection matches brute force") {
  for (auto [n, a, b] : {std::tuple{9, 1, 1}, {14, 2, 1}, {20, 1, 3}, {25, 2, 3}}) {
    auto p = mindeg_params(n, a, b);
    GameState s(n, a, b);
    RandomPlayer r(static_cast<std::uint64_t>(n));
    while (!s.exhausted()) {
      if (s.to_move() == Player::Maker) {
        DegreeWeights w(p, Player::Maker);
        w.refresh(s);
        const auto pick = mindeg_select(s, w, 1);
        CHECK(s.edge(pick.front()) == brute_best(s, p));
      }
      s.apply_claim_positions(s.to_move(), r.select(s));
    }
  }
}

TEST_CASE("mindeg potential after symmetric play") {
  auto p = mindeg_params(100, 1, 1);
  GameState s(100, 1, 1);
  const double t0 = mindeg_potential(s, p);
  CHECK(t0 == doctest::Approx(p.t0).epsilon(1e-9));
  // a perfect matching each: every vertex gains one Maker and one Breaker edge
  for (Vertex v = 0; v < 100; v += 2) {
    s.apply_claim(Player::Maker, std::vector<Edge>{{v, v + 1}});
    s.apply_claim(Player::Breaker, std::vector<Edge>{{v, (v + 2) % 100 + 1}});
  }
  CHECK(mindeg_potential(s, p) < t0);
}

TEST_CASE("flooding breaker") {
  GameState s(6, 1, 2, Player::Breaker);
  FloodingBreaker f;
  auto first = f.select(s);
  CHECK(f.target() == 0);
  CHECK(first == std::vector<Position>{s.index(0, 1), s.index(0, 2)});

  GameState t(5, 1, 3);
  t.apply_claim(Player::Maker, std::vector<Edge>{{0, 1}});
  FloodingBreaker g;
  auto picks = g.select(t);
  CHECK(g.target() == 2);
  t.apply_claim_positions(Player::Breaker, picks);
  t.apply_claim(Player::Maker, std::vector<Edge>{{2, 4}});
  // nothing left at 2: spill over to the lowest free edges
  auto spill = g.select(t);
  CHECK(spill == std::vector<Position>{t.index(0, 3), t.index(0, 4), t.index(1, 3)});

  GameState full(4, 2, 1);
  full.apply_claim(Player::Maker, std::vector<Edge>{{0, 1}, {2, 3}});
  CHECK_THROWS_AS(FloodingBreaker().select(full), Error);
}

TEST_CASE("flooding breaker exhaustive at n=5") {
  // target degree at most a * floor((n-1)/(a+b)) = 2
  Judge<GameState> j = [](const GameState& s, const Strategy& st) -> std::optional<bool> {
    const Vertex v = dynamic_cast<const FloodingBreaker&>(st).target();
    if (v < 0) return std::nullopt;
    if (s.degree(Player::Maker, v) > 2) return false;
    if (s.free_degree(v) == 0) return true;
    return std::nullopt;
  };
  CHECK(verify_one_sided(GameState(5, 1, 1), FloodingBreaker(), Player::Breaker, j).holds);
}

TEST_CASE("degree adversary and simple maker") {
  GameState s(30, 2, 1);
  D2SimpleMaker m;
  DegreeAdversary adv;
  MatchOptions o;
  o.early_stop = false;
  o.check_invariants = true;
  auto t = run_match(s, m, adv, Property::diameter_at_most(2), o);
  CHECK(t.violations() == 0);
  CHECK(D2SimpleMaker::target_degree(5) == 2);
  CHECK(D2SimpleMaker::target_degree(6) == 3);
  const auto final = replay_transcript(t).state;
  if (degree_profile(final.maker_graph()).min >= D2SimpleMaker::target_degree(30)) CHECK(t.verdict);
}
