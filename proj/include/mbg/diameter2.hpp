#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "mbg/degree.hpp"
#include "mbg/expansion.hpp"
#include "mbg/game_state.hpp"
#include "mbg/strategy.hpp"

namespace mbg {

// Pairing Breaker for the (1:1) game -----------------------------------------

/// Keeps one pair {u,v} at Maker distance >= 3: Maker's uw is answered with
/// wv and vw with wu.
std::vector<Position> pairing_breaker_select(const GameState& state, Edge& pair);

class PairingBreaker : public Cloneable<PairingBreaker, Strategy> {
 public:
  std::string id() const override { return "pairing"; }
  std::vector<Position> select(const GameState& state) override;
  std::string state_key() const override;
  /// (-1,-1) before the first move.
  Edge pair() const { return pair_; }

 private:
  Edge pair_{-1, -1};
};

// Breaker with bias ~ (2+eps) sqrt(n / ln n) ----------------------------------

struct D2BreakerParams {
  int n = 0;
  double epsilon = 0;
  int b = 0;
  int r_prime_max = 0;  // ceil((n-1)/b)
  int t_worst = 0;      // 2 r' + 2
  double box_rhs = 0;   // ((b-1)/2) ln(n - t - 1 - r')
  bool box_ok = false;

  nlohmann::json to_json() const;
};

D2BreakerParams d2_breaker_params(int n, double epsilon);

/// Phase I floods the lowest vertex v without Maker edges; Phase II claims
/// one of the disjoint boxes E_x = {x u_i} where u_i are Maker's neighbours
/// of v.
class D2Breaker : public Cloneable<D2Breaker, Strategy> {
 public:
  std::string id() const override { return "d2-breaker"; }
  std::vector<Position> select(const GameState& state) override;
  std::string state_key() const override;

  Vertex center() const { return v_; }
  bool in_phase_two() const { return phase_two_; }
  int phase_one_rounds() const { return rounds_one_; }
  const std::vector<Vertex>& spokes() const { return spokes_; }
  const std::vector<std::vector<Position>>& boxes() const { return boxes_; }

 private:
  void start_phase_two(const GameState& state);

  Vertex v_ = -1;
  bool phase_two_ = false;
  int rounds_one_ = 0;
  std::vector<Vertex> spokes_;
  std::vector<std::vector<Position>> boxes_;
};

// Maker with bias 2 -------------------------------------------------------------

struct D2MakerParams {
  double n = 0;
  double b = 0, c = 0.125, r = 0, s = 0;
  double ell_max = 0;  // ceil(32 r b^2)
  double lambda4 = 0;
  bool cond1 = false, cond2 = false, cond3c = false, cond3a = false, cond3b = false, cond4a = false,
       cond4b = false, cond5 = false;

  bool all() const { return cond1 && cond2 && cond3c && cond3a && cond3b && cond4a && cond4b && cond5; }
  nlohmann::json to_json() const;
};

D2MakerParams d2_maker_params(double n);

/// 1/(16 b l) - (4b+1)/(16 b l)^2.
double game4_lambda(double b, double ell);

/// Smallest power of ten in [10^1, 10^40] where every condition holds; 0 if
/// none.
double d2_maker_threshold();

/// Round-robin of the four Phase I subgames followed by Phase II.
class D2Maker : public Cloneable<D2Maker, Strategy> {
 public:
  struct Options {
    std::size_t game3_cap = 200'000;
  };

  D2Maker() = default;
  explicit D2Maker(Options options) : options_(options) {}

  std::string id() const override { return "d2-maker"; }
  std::vector<Position> select(const GameState& state) override;

  const D2MakerParams& params() const { return params_; }
  const std::vector<Vertex>& high() const { return high_; }
  int phase_one_length() const { return phase_one_; }
  int high_threshold() const { return threshold_; }
  double lambda() const { return lambda_; }
  int game3_r() const { return r3_; }
  int game3_s() const { return s3_; }
  /// T at the start of each Game 4 turn.
  const std::vector<double>& game4_history() const { return t_history_; }
  /// Live Game 4 weight sum on `state`.
  double game4_potential(const GameState& state) const;

 private:
  struct Pair {
    Vertex x, y;
    std::vector<Vertex> mids;  // frozen path set
  };

  void start(const GameState& state);
  void detect_high(const GameState& state);
  void freeze_phase_two(const GameState& state);

  void game1(const GameState& state, std::vector<Position>& picks);
  void game2(const GameState& state, std::vector<Position>& picks);
  void game3(const GameState& state, std::vector<Position>& picks);
  void game4(const GameState& state, std::vector<Position>& picks);
  void phase_two(const GameState& state, std::vector<Position>& picks);

  Options options_;
  bool started_ = false;
  D2MakerParams params_;
  int threshold_ = 0;
  int phase_one_ = 0;
  double lambda_ = 0;
  int r3_ = 0, s3_ = 0;
  double virtual_b_ = 0;
  MinDegParams game1_;
  std::optional<ExpMaker> game3_;
  std::vector<Vertex> high_;
  std::vector<bool> is_high_;
  std::vector<Pair> pairs4_;
  bool frozen_two_ = false;
  std::vector<Pair> pairs2_;
  std::vector<double> t_history_;
  std::size_t high_at_last_step_ = 0;
};

}  // namespace mbg
