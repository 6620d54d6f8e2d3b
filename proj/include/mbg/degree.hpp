#pragma once

#include <vector>

#include <json.hpp>

#include "mbg/game_state.hpp"
#include "mbg/strategy.hpp"

namespace mbg {

/// Parameters of the (a:b) minimum-degree game on K_n. Biases may be
/// fractional (effective biases of composite strategies).
struct MinDegParams {
  int n = 0;
  double a = 1;
  double b = 1;
  double k = 0;
  double lambda2 = 0;
  double lambda1 = 0;
  double d_max = 0;
  double t0 = 0;  // potential of the empty board

  bool nonvacuous = false;   // d_max > 0
  bool bias_ok = false;      // a <= n / (4 ln n)
  bool lambda_ok = false;    // 0 < lambda2 < 1
  bool eq2_ok = false;       // (1+lambda1)^b <= 1 + a lambda2
  bool start_ok = false;     // t0 < 1

  // Values the weights actually use: lambda2 is clamped to 1/2 when the
  // formula leaves (0,1).
  double play_lambda2 = 0;
  double play_lambda1 = 0;

  bool guaranteed() const { return nonvacuous && bias_ok && lambda_ok && eq2_ok && start_ok; }
  nlohmann::json to_json() const;
};

MinDegParams mindeg_params(int n, double a, double b);

/// Per-vertex hyperedge weights of the degree game, in log space.
/// `me` is the side collecting degree; X counts its edges at a vertex and Y
/// the opponent's.
class DegreeWeights {
 public:
  DegreeWeights(const MinDegParams& params, Player me);

  /// Recomputes counts from the state.
  void refresh(const GameState& state);
  void claim(Vertex u, Vertex v, Player who);

  int mine(Vertex v) const { return x_[static_cast<std::size_t>(v)]; }
  int theirs(Vertex v) const { return y_[static_cast<std::size_t>(v)]; }
  /// ln w(A_v).
  double log_weight(Vertex v) const;
  /// ln of the sum of all vertex weights.
  double log_potential() const;

  Player me() const { return me_; }
  const MinDegParams& params() const { return params_; }

 private:
  MinDegParams params_;
  Player me_;
  double ln_up_, ln_down_, y0_, x0_;
  std::vector<int> x_, y_;
};

/// T = sum of w(A_v) for the side `me` (the degree-game Maker).
double mindeg_potential(const GameState& state, const MinDegParams& params, Player me = Player::Maker);

/// `count` edges chosen one at a time, each maximising w(A_u) + w(A_v) over
/// unclaimed edges not yet picked; ties by lexicographic edge order.
/// `weights` is advanced past the picks.
std::vector<Position> mindeg_select(const GameState& state, DegreeWeights& weights, std::size_t count);
std::vector<Position> mindeg_select(const GameState& state, DegreeWeights& weights, std::size_t count, Player claimer);
/// As above with `taken` already spoken for this turn (and folded into
/// `weights` by the caller); returns only the new picks.
std::vector<Position> mindeg_select(const GameState& state, DegreeWeights& weights, std::size_t count, Player claimer,
                                    std::vector<Position> taken);

/// Degree-game Maker strategy; may play either side.
class MinDegMaker : public Cloneable<MinDegMaker, Strategy> {
 public:
  /// Parameters from (n, own bias, opponent bias) at first use.
  MinDegMaker() = default;
  explicit MinDegMaker(MinDegParams params) : params_(params), fixed_(true) {}

  std::string id() const override { return "mindeg-maker"; }
  std::vector<Position> select(const GameState& state) override;

  /// Potential at the start of each of this side's turns.
  const std::vector<double>& log_history() const { return history_; }
  const MinDegParams& params() const { return params_; }

 private:
  MinDegParams params_;
  bool fixed_ = false;
  bool started_ = false;
  std::vector<double> history_;
};

/// Lemma-4 flooding: every claim goes to one vertex untouched by Maker at
/// the first call (lowest index).
std::vector<Position> mindeg_breaker_select(const GameState& state, Vertex target);

class FloodingBreaker : public Cloneable<FloodingBreaker, Strategy> {
 public:
  std::string id() const override { return "flooding"; }
  std::vector<Position> select(const GameState& state) override;
  std::string state_key() const override { return std::to_string(target_); }
  Vertex target() const { return target_; }

 private:
  Vertex target_ = -1;
};

/// Breaker heuristic that claims the edges the degree-game Maker wants most.
class DegreeAdversary : public Cloneable<DegreeAdversary, Strategy> {
 public:
  std::string id() const override { return "esb-degree"; }
  std::vector<Position> select(const GameState& state) override;
};

/// b < a: degree game aimed at minimum degree ceil((n-1)/2).
class D2SimpleMaker : public Cloneable<D2SimpleMaker, Strategy> {
 public:
  std::string id() const override { return "d2-simple-maker"; }
  std::vector<Position> select(const GameState& state) override;

  static int target_degree(int n) { return n / 2; }

 private:
  MinDegMaker inner_;
  bool started_ = false;
};

}  // namespace mbg
