#include <doctest.h>

#include <cmath>
#include <set>

#include "mbg/errors.hpp"
#include "mbg/expansion.hpp"
#include "mbg/heuristics.hpp"
#include "mbg/transcript.hpp"

using namespace mbg;

TEST_CASE("expansion conditions") {
  auto p = exp_condition(100, 50, 50, 2, 5);
  CHECK(p.case_a);
  CHECK(2 * 5 * std::log(100.0) == doctest::Approx(46.05).epsilon(1e-3));
  auto q = exp_condition(100, 1, 1, 1, 100);
  CHECK_FALSE(q.case_a);
  CHECK_FALSE(q.case_b);
  CHECK_FALSE(q.case_c);
  CHECK_FALSE(q.any());
  CHECK_THROWS_AS(exp_condition(100, 60, 50, 1, 1), Error);
  auto flip = exp_condition(10, 5, 2, 3, 1);
  CHECK(flip.r_gt_s);
  CHECK_FALSE(flip.case_a);
  CHECK(flip.to_json().contains("family_size"));
}

TEST_CASE("expansion families") {
  auto f = exp_family(4, 1, 1);
  CHECK(f.sets.size() == 6);
  for (const auto& s : f.sets) CHECK(s.size() == 1);
  std::set<std::vector<Position>> distinct(f.sets.begin(), f.sets.end());
  CHECK(distinct.size() == 6);

  auto g = exp_family(4, 1, 2);
  CHECK(g.sets.size() == 12);
  for (const auto& s : g.sets) CHECK(s.size() == 2);

  try {
    exp_family(30, 5, 10);
    FAIL("expected family-too-large");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FamilyTooLarge);
    CHECK(std::string(e.what()).find("465817912560") != std::string::npos);
  }
  CHECK(exp_condition(30, 5, 10, 1, 1).family_size == BigInt("465817912560"));
}

TEST_CASE("closed form matches the generic sum") {
  for (int n = 4; n <= 8; ++n)
    for (int r = 1; r < n; ++r)
      for (int s = r; r + s <= n; ++s) {
        const auto f = exp_family(n, r, s);
        for (int a = 1; a <= 3; ++a)
          for (int b = 1; b <= 3; ++b) {
            // generic potential with Breaker collecting sets and Maker defending
            const double generic = esb_start_value(f, b, a).value / (1 + a);
            CHECK(generic == doctest::Approx(exp_closed_form(n, r, s, a, b)).epsilon(1e-9));
          }
      }
}

TEST_CASE("exp maker selection") {
  GameState fresh(4, 1, 1);
  CHECK(ExpMaker(1, 1).select(fresh) == std::vector<Position>{0});

  // star at 0 has one free edge left; stars are the (R,S) sets for r=1, s=3
  GameState s(4, 1, 2, Player::Breaker);
  s.apply_claim(Player::Breaker, std::vector<Edge>{{0, 1}, {0, 2}});
  ExpMaker m(1, 3);
  CHECK(m.select(s) == std::vector<Position>{s.index(0, 3)});
  // by hand: (0,3) weighs 2^(-1/2) + 2^(-3/2), (1,2) weighs 2 * 2^(-1)
  EsbPotential pot(std::make_shared<const WinningSetFamily>(exp_family(4, 1, 3)), 2, 1, Owner::Breaker);
  pot.sync(s.board());
  CHECK(static_cast<double>(pot.weight(s.index(1, 2))) == doctest::Approx(1.0));
  CHECK(static_cast<double>(pot.weight(s.index(0, 3))) ==
        doctest::Approx(std::pow(2.0, -0.5) + std::pow(2.0, -1.5)));

  GameState done(4, 2, 1);
  done.apply_claim(Player::Maker, std::vector<Edge>{{0, 1}, {0, 2}});
  done.apply_claim(Player::Breaker, std::vector<Edge>{{0, 3}});
  done.apply_claim(Player::Maker, std::vector<Edge>{{1, 2}, {1, 3}});
  done.apply_claim(Player::Breaker, std::vector<Edge>{{2, 3}});
  CHECK(done.exhausted());
  GameState all(4, 3, 1);
  all.apply_claim(Player::Maker, std::vector<Edge>{{0, 1}, {2, 3}, {0, 2}});
  all.apply_claim(Player::Breaker, std::vector<Edge>{{0, 3}});
  // every single-edge set is hit except the free ones; lowest free edge first
  CHECK(ExpMaker(3, 1).select(all) == std::vector<Position>{all.index(1, 2), all.index(1, 3)});
}

TEST_CASE("role swap equivalence on finished games") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 5 + static_cast<int>(seed % 2), r = 1 + static_cast<int>(seed % 2), s = 2;
    ExpMaker m(r, s);
    RandomPlayer br(seed);
    MatchOptions o;
    o.early_stop = false;
    auto t = run_match(GameState(n, 1, 1), m, br, Property::expansion(r, s), o);
    const auto st = replay_transcript(t).state;
    const auto fam = exp_family(n, r, s);
    bool every_hit = true;
    for (const auto& A : fam.sets) {
      bool hit = false;
      for (Position p : A) hit = hit || st.owner(p) == Owner::Maker;
      every_hit = every_hit && hit;
    }
    CHECK(every_hit == has_expansion(st.maker_graph(), r, s));
  }
}
