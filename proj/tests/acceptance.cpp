// Acceptance suite: one line per criterion.
//
//   acceptance                 run everything
//   acceptance --criterion N   run one criterion
//   acceptance --with-n6       criterion 1 also solves K_6

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mbg/box.hpp"
#include "mbg/degree.hpp"
#include "mbg/diameter2.hpp"
#include "mbg/diameter_d.hpp"
#include "mbg/errors.hpp"
#include "mbg/esb.hpp"
#include "mbg/expansion.hpp"
#include "mbg/harness.hpp"
#include "mbg/heuristics.hpp"
#include "mbg/solver.hpp"
#include "mbg/transcript.hpp"

using namespace mbg;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

bool with_n6 = false;

fs::path source_dir() { return fs::path(MBG_SOURCE_DIR); }

ExperimentConfig load_config(const std::string& name) {
  std::ifstream in(source_dir() / "experiments" / name);
  if (!in) throw Error(ErrorCode::InvalidParameters, "missing experiment " + name);
  auto c = ExperimentConfig::from_json(nlohmann::json::parse(in));
  c.csv_path.clear();
  c.transcript_dir.clear();
  return c;
}

std::optional<bool> family_breaker_holds(const FamilyGameState& s, const FamilyStrategy&) {
  if (s.maker_completed()) return false;
  bool all_dead = true;
  for (std::size_t i = 0; i < s.family().sets.size(); ++i) all_dead = all_dead && !s.surviving(i);
  if (all_dead || s.exhausted()) return true;
  return std::nullopt;
}

std::optional<bool> family_maker_completes(const FamilyGameState& s, const FamilyStrategy& st) {
  auto r = family_breaker_holds(s, st);
  if (!r) return std::nullopt;
  return !*r;
}

// 1 ---------------------------------------------------------------------------------

void criterion1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int n = 2; n <= (with_n6 ? 6 : 5); ++n) {
    const Player want = n <= 3 ? Player::Maker : Player::Breaker;
    const auto r = solve(n, 1, 1, 2);
    o.require(r.winner == want, "n=" + std::to_string(n));
    o.detail << "n=" << n << ":" << to_string(r.winner) << " ";
  }
  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(sec < 60, "runtime");
  o.detail << "(" << sec << " s)";
}

// 2 ---------------------------------------------------------------------------------

void criterion2(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int n = 4; n <= 6; ++n) {
    const auto r = verify_one_sided(n, 1, 1, 2, PairingBreaker(), Player::Breaker);
    o.require(r.holds, "pairing fails at n=" + std::to_string(n));
    o.detail << "n=" << n << ":" << (r.holds ? "holds" : "fails") << " (" << r.states << " states) ";
  }
  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(sec < 300, "runtime");
  o.detail << "(" << sec << " s)";
}

// 3 ---------------------------------------------------------------------------------

void criterion3(Outcome& o) {
  std::mt19937_64 rng(2024);
  int accepted = 0, attempts = 0, failures = 0;
  std::size_t largest = 0;
  while (accepted < 200 && attempts < 100000) {
    ++attempts;
    const int a = 1 + static_cast<int>(rng() % 3), b = 1 + static_cast<int>(rng() % 3);
    const std::size_t universe = 4 + rng() % 9;
    WinningSetFamily f{universe, {}};
    const int sets = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < sets; ++i) {
      std::vector<Position> all(universe);
      std::iota(all.begin(), all.end(), 0);
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(std::min<std::size_t>(universe, 1 + rng() % 6));
      std::sort(all.begin(), all.end());
      f.sets.push_back(all);
    }
    if (!esb_start_value(f, a, b).breaker_wins) continue;
    ++accepted;
    largest = std::max(largest, universe);
    EsbBreaker esb;
    esb.set_invariant_checks(true);
    const auto r =
        verify_one_sided<FamilyGameState>(FamilyGameState(f, a, b), esb, Player::Breaker, family_breaker_holds);
    if (!r.holds) ++failures;
  }
  o.require(accepted >= 200, "too few families with start value < 1");
  o.require(failures == 0, std::to_string(failures) + " families lost");
  o.detail << accepted << " families (largest universe " << largest << "), " << failures << " Breaker losses";
}

// 4 ---------------------------------------------------------------------------------

void criterion4(Outcome& o) {
  int instances = 0, lost = 0;
  for (int r = 1; r <= 4; ++r)
    for (int k = 1; k <= 4; ++k)
      for (int a = 1; a <= 4; ++a)
        for (int opp = 1; opp <= 2; ++opp) {
          if (!box_game_condition(r, k, a, opp)) continue;
          WinningSetFamily f{static_cast<std::size_t>(r * k), {}};
          for (int i = 0; i < k; ++i) {
            std::vector<Position> box(static_cast<std::size_t>(r));
            std::iota(box.begin(), box.end(), static_cast<Position>(i * r));
            f.sets.push_back(box);
          }
          for (BoxPolicy policy : {BoxPolicy::SmallestFirst, BoxPolicy::FinishOrBalance}) {
            ++instances;
            const auto res = verify_one_sided<FamilyGameState>(FamilyGameState(f, a, opp), BoxMaker(policy),
                                                               Player::Maker, family_maker_completes);
            if (!res.holds) {
              ++lost;
              o.require(false, "(r,k,a,b)=(" + std::to_string(r) + "," + std::to_string(k) + "," + std::to_string(a) +
                                   "," + std::to_string(opp) + ")");
            }
          }
        }
  o.require(instances > 0, "empty grid");
  o.detail << instances << " (instance, policy) pairs, " << lost << " lost";
}

// 5 ---------------------------------------------------------------------------------

void criterion5(Outcome& o) {
  int games = 0, increases = 0, start_bad = 0, degree_bad = 0, guaranteed = 0, faults = 0;
  double worst_ratio = 0;
  for (int n : {50, 100, 200}) {
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 3}}) {
      const auto params = mindeg_params(n, a, b);
      if (params.nonvacuous && !(params.t0 < 1)) ++start_bad;
      auto play = [&](Strategy& breaker, Player first) {
        MinDegMaker maker;
        MatchOptions opt;
        opt.early_stop = false;
        opt.check_invariants = true;
        const auto t = run_match(GameState(n, a, b, first), maker, breaker, Property::none(), opt);
        ++games;
        if (t.fault) ++faults;
        increases += t.violations();
        const auto& h = maker.log_history();
        for (std::size_t i = 1; i < h.size(); ++i) worst_ratio = std::max(worst_ratio, std::exp(h[i] - h[i - 1]));
        if (params.guaranteed()) {
          ++guaranteed;
          const int mind = degree_profile(replay_transcript(t).state.maker_graph()).min;
          if (!(mind > std::floor(params.d_max))) ++degree_bad;
        }
      };
      for (std::uint64_t seed = 0; seed < 38; ++seed) {
        RandomPlayer r(seed);
        play(r, Player::Maker);
      }
      for (Player first : {Player::Maker, Player::Breaker}) {
        FloodingBreaker f;
        play(f, first);
        DegreeAdversary e;
        play(e, first);
      }
    }
  }
  o.require(games >= 500, "fewer than 500 games");
  o.require(faults == 0, "strategy faults");
  o.require(increases == 0, "potential increased");
  o.require(start_bad == 0, "T0 >= 1 on a non-vacuous instance");
  o.require(degree_bad == 0, "final min degree not above floor(d_max)");
  o.detail << games << " games, potential increases " << increases << " (max step ratio " << worst_ratio
           << "), guaranteed runs " << guaranteed << " with " << degree_bad << " degree misses";
}

// 6 ---------------------------------------------------------------------------------

void criterion6(Outcome& o) {
  int checked = 0, inapplicable = 0, small = 0;
  for (int n = 2; n <= 6; ++n)
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; a + b <= 4; ++b) {
        // Maker can touch every vertex in one turn
        if (n <= 2 * a) {
          ++small;
          continue;
        }
        const int bound = a * ((n - 1) / (a + b));
        Judge<GameState> j = [bound](const GameState& s, const Strategy& st) -> std::optional<bool> {
          const Vertex v = dynamic_cast<const FloodingBreaker&>(st).target();
          if (v < 0) return s.exhausted() ? std::optional<bool>(true) : std::nullopt;
          if (s.degree(Player::Maker, v) > bound) return false;
          if (s.free_degree(v) == 0) return true;
          return std::nullopt;
        };
        try {
          const auto r = verify_one_sided(GameState(n, a, b), FloodingBreaker(), Player::Breaker, j);
          ++checked;
          if (!r.holds) {
            o.require(false, "(n,a,b)=(" + std::to_string(n) + "," + std::to_string(a) + "," + std::to_string(b) +
                                 ") bound " + std::to_string(bound));
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::StrategyInapplicable) throw;
          ++inapplicable;
        }
      }
  o.detail << checked << " instances, " << inapplicable << " with no admissible target, " << small
           << " skipped with n <= 2a";
}

// 7 ---------------------------------------------------------------------------------

void criterion7(Outcome& o) {
  int compared = 0, mismatched = 0;
  double worst = 0;
  for (int n = 2; n <= 8; ++n)
    for (int r = 1; r < n; ++r)
      for (int s = 1; r + s <= n; ++s) {
        const auto f = exp_family(n, r, s);
        for (int a = 1; a <= 3; ++a)
          for (int b = 1; b <= 3; ++b) {
            const double generic = esb_start_value(f, b, a).value / (1 + a);
            const double closed = exp_closed_form(n, r, s, a, b);
            const double rel = std::abs(generic - closed) / std::max(std::abs(closed), 1e-300);
            worst = std::max(worst, rel);
            ++compared;
            if (rel > 1e-9) ++mismatched;
          }
      }
  o.require(mismatched == 0, "closed form mismatch");

  int games = 0, lost = 0;
  for (int n = 2; n <= 7; ++n)
    for (int r = 1; r < n; ++r)
      for (int s = 1; r + s <= n; ++s)
        for (int a = 1; a <= 3; ++a)
          for (int b = 1; b <= 3; ++b) {
            if (!exp_condition(n, r, s, a, b).any()) continue;
            Judge<GameState> j = [r, s](const GameState& st, const Strategy&) -> std::optional<bool> {
              if (has_expansion(st.maker_graph(), r, s)) return true;
              Graph open = st.maker_graph();
              for (Position q = 0; q < st.edge_total(); ++q) {
                if (st.owner(q) == Owner::Unclaimed) open.add_edge(st.edge(q).u, st.edge(q).v);
              }
              if (!has_expansion(open, r, s)) return false;
              return std::nullopt;
            };
            ++games;
            if (!verify_one_sided(GameState(n, a, b), ExpMaker(r, s), Player::Maker, j).holds) {
              ++lost;
              o.require(false, "EXP-Maker lost (n,r,s,a,b)=(" + std::to_string(n) + "," + std::to_string(r) + "," +
                                   std::to_string(s) + "," + std::to_string(a) + "," + std::to_string(b) + ")");
            }
          }
  o.require(games > 0, "no instance satisfies a case");
  o.detail << compared << " closed-form comparisons (worst rel " << worst << "), " << games
           << " exhaustive EXP games, " << lost << " lost";
}

// 8 ---------------------------------------------------------------------------------

void criterion8(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = load_config("d2_breaker_suite.json");
  o.require(c.ns == std::vector<int>{100} && c.b.resolve(100) == 10, "suite is not n=100, b=10");
  const auto res = run_experiment(c);
  std::map<std::string, int> wins;
  for (const auto& r : res.rows) {
    if (r.winner == "Breaker") ++wins[r.maker];
  }
  for (const auto& t : res.transcripts) {
    const auto end = replay_transcript(t).state;
    o.require(!diameter_at_most(end.maker_graph(), 2), "Maker diameter <= 2");
  }
  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(res.rows.size() == 60, "expected 60 matches");
  o.require(res.violations() == 0, "bookkeeping violations");
  o.require(res.faults() == 0, "faults");
  for (const auto& [m, w] : wins) o.require(w == 20, m + " lost a game");
  o.require(wins.size() == 3, "three Maker heuristics");
  o.require(sec < 120, "runtime");
  for (const auto& [m, w] : wins) o.detail << m << " " << w << "/20, ";
  o.detail << "violations " << res.violations() << " (" << sec << " s)";
}

// 9 ---------------------------------------------------------------------------------

void criterion9(Outcome& o) {
  const auto c = load_config("d2_maker_random.json");
  o.require(c.ns == std::vector<int>{30} && c.b.resolve(30) == 1 && c.seeds.size() == 100, "run is not n=30, b=1");
  const auto res = run_experiment(c);
  int maker_wins = 0, potential = 0;
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    maker_wins += res.rows[i].winner == "Maker";
    for (const auto& a : res.transcripts[i].annotations) {
      if (a.label == "violation" && a.data["name"] == "d2-game4-potential") ++potential;
    }
  }
  double first = 0;
  for (double n = 100; n <= 1e12; n *= 10) {
    if (d2_maker_params(n).all()) {
      first = n;
      break;
    }
  }
  o.require(potential == 0, "Game 4 potential rose without a new high vertex");
  o.require(res.violations() == 0, "other invariant violations");
  o.require(maker_wins == 100, "Maker lost");
  o.require(first == d2_maker_threshold() && first == 1e7, "threshold moved");
  o.detail << "Maker " << maker_wins << "/100, potential increases " << potential << ", n* = " << first;
}

// 10 --------------------------------------------------------------------------------

void criterion10(Outcome& o) {
  const auto c = load_config("dd_breaker_a1.json");
  const auto bias = dd_breaker_bias(400, 3);
  o.require(c.ns == std::vector<int>{400} && c.b.resolve(400) == 139 && bias.b1 == 35, "not n=400, b=139, b1=35");
  const auto res = run_experiment(c);
  std::map<std::string, int> held;
  int delfinal = 0, budget = 0;
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const auto& t = res.transcripts[i];
    Edge pair{-1, -1};
    for (const auto& a : t.annotations) {
      if (a.label == "dd-pair") pair = Edge(a.data["u"].get<Vertex>(), a.data["v"].get<Vertex>());
      if (a.label == "flag" && a.data["name"] == "dd-delfinal-exceeded") ++delfinal;
      if (a.label == "flag" && a.data["name"] == "dd-budget-exceeded") ++budget;
    }
    if (pair.u < 0) continue;
    const auto end = replay_transcript(t).state;
    if (!dist(end.maker_graph(), pair.u, pair.v).at_most(3)) ++held[res.rows[i].maker];
  }
  o.require(res.rows.size() == 60, "expected 60 matches");
  for (const auto& m : c.makers) o.require(held[m.id] == 20, m.id + " reached the pair");
  o.require(res.violations() == 0, "blocking soundness violated");
  o.require(delfinal == 0, "blocking demand above the budget");
  for (const auto& m : c.makers) o.detail << m.id << " " << held[m.id] << "/20, ";
  o.detail << "soundness violations " << res.violations() << ", budget flags " << delfinal << " (b2 overruns "
           << budget << ")";
}

// 11 --------------------------------------------------------------------------------

void criterion11(Outcome& o) {
  o.require(claim2_check({2, 10}, {2, 20}), "Claim 2 inequality");
  int points = 0, lower = 0, upper = 0, bound = 0;
  for (int e = 10; e <= 30; ++e)
    for (int d = 3; d <= 8; ++d) {
      const auto p = dd_params(std::pow(2.0, e), d);
      ++points;
      bool lo = true, up = true;
      for (int i = 1; i < p.half; ++i) {
        lo = lo && p.claim1_lower[static_cast<std::size_t>(i)];
        up = up && p.claim1_upper[static_cast<std::size_t>(i)];
      }
      lower += !lo;
      upper += !up;
      bound += !p.theorem_bound;
    }
  o.require(lower == 0, "Claim 1 lower bound");
  o.require(upper == 0, "Claim 1 upper bound");
  o.require(bound == 0, "Maker bias bound");
  o.detail << "claim2 exhaustive ok; of " << points << " grid points: lower bound fails " << lower
           << ", upper bound fails " << upper << ", bias bound fails " << bound;
}

// 12 --------------------------------------------------------------------------------

void criterion12(Outcome& o) {
  int files = 0;
  const fs::path dir = source_dir() / "experiments" / "transcripts";
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".jsonl") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto t = Transcript::from_jsonl(ss.str());
    const auto r1 = replay_transcript(t);
    const auto r2 = replay_transcript(Transcript::from_jsonl(t.to_jsonl()));
    ++files;
    const std::string name = entry.path().filename().string();
    o.require(r1.matches_footer, name + " verdict");
    o.require(r1.verdict == r2.verdict && r1.state.log() == r2.state.log(), name + " replay differs");
    o.require(t.to_jsonl() == ss.str(), name + " does not round-trip byte for byte");
  }
  o.require(files > 0, "no shipped transcripts");

  int solved = 0;
  SolveOptions plain;
  plain.canonicalize = false;
  for (int n = 2; n <= 5; ++n)
    for (int d = 2; d <= 3; ++d)
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
          for (Player first : {Player::Maker, Player::Breaker}) {
            const auto x = solve(n, a, b, d, first);
            const auto y = solve(n, a, b, d, first, plain);
            ++solved;
            o.require(x.winner == y.winner, "canonical and plain solvers disagree");
          }
  o.detail << files << " transcripts replayed, " << solved << " instances solved both ways";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
  app.add_flag("--with-n6", with_n6, "criterion 1 also solves n=6");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<void(Outcome&)>> all = {criterion1, criterion2,  criterion3,  criterion4,
                                                          criterion5, criterion6,  criterion7,  criterion8,
                                                          criterion9, criterion10, criterion11, criterion12};
  bool ok = true;
  for (int i = 1; i <= 12; ++i) {
    if (only && only != i) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      all[static_cast<std::size_t>(i - 1)](o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "error: " << e.what();
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail.str() << " ["
              << sec << " s]" << std::endl;
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
