#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mbg/degree.hpp"
#include "mbg/expansion.hpp"
#include "mbg/game_state.hpp"
#include "mbg/strategy.hpp"

namespace mbg {

// Parameters ------------------------------------------------------------------

struct DdParams {
  double n = 0;
  int d = 0;
  int half = 0;  // ceil(d/2)
  double beta = 0;
  double b = 0;
  double r1_constant = 6;
  std::vector<double> r;  // r_0 = 1, r_1, ..., r_{half-1}
  std::vector<bool> claim1_lower, claim1_upper;  // index i = 1..half-1 (slot 0 unused)
  bool nontrivial = false;  // 2 half b ln n < r_{half-1} ln 2
  bool theorem_bound = false;  // b > (1/(2d)) (n / ln n)^(1 - 1/half)
  bool d_small = false;        // d <= ln n / (3 ln ln n)

  bool claim1_ok() const;
  nlohmann::json to_json() const;
};

DdParams dd_params(double n, int d, double r1_constant = 6);

/// r_i from r_0..r_{i-1}, i >= 2.
double dd_next_r(const DdParams& params, int i);

// Claim 2 and the blocking budget -----------------------------------------------

BigInt claim2_f(int delta, int m, int k);
/// (m-1) D^m - m D^(m-1) + 1 + (D-1)^2.
BigInt claim2_bound(int delta, int m);
bool claim2_check(std::pair<int, int> delta_range, std::pair<int, int> m_range);

struct BlockBudget {
  int delta = 0;
  int d = 0;
  BigInt budget;
};

/// [(d-1) D^d - d D^(d-1) + 1 + (D-1)^2] / (D-1)^2, D >= 2.
BlockBudget block_budget(int delta, int d);

// Maker ---------------------------------------------------------------------------

/// Desk-scale subgame plan. Game 1 is the degree game; games 2..half are
/// expansion games with the listed (r, s).
struct DdPlan {
  int d = 0;
  int half = 0;
  double effective_b = 0;  // opponent bias the subgames assume (half * b)
  double r1 = 0;           // Game 1 target, reported only
  std::vector<std::pair<int, int>> exp_games;

  nlohmann::json to_json() const;
};

/// Plan from dd_params with r_i rounded down; throws FamilyTooLarge when an
/// expansion family exceeds `cap`.
DdPlan dd_plan(int n, int d, double b, std::size_t cap = kDefaultFamilyCap);

class DdMaker : public Cloneable<DdMaker, Strategy> {
 public:
  explicit DdMaker(int d) : d_(d) {}
  explicit DdMaker(DdPlan plan) : d_(plan.d), plan_(std::move(plan)) {}

  std::string id() const override { return "dd-maker"; }
  std::vector<Position> select(const GameState& state) override;
  const std::optional<DdPlan>& plan() const { return plan_; }

 private:
  int d_;
  std::optional<DdPlan> plan_;
  bool started_ = false;
  MinDegParams game1_;
  std::vector<ExpMaker> games_;
};

// Breaker, a = 1 ----------------------------------------------------------------

struct DdBreakerBias {
  int b1 = 0;  // ceil(d^(1/(d-1)) n^(1-1/(d-1)))
  int b = 0;   // ceil(multiplier d^(1/(d-1)) n^(1-1/(d-1)))
  int b2 = 0;
};

DdBreakerBias dd_breaker_bias(int n, int d, double multiplier = 4);

/// Edges Breaker must own after Maker's edge xy so that no Maker path of
/// length <= d can join u and v, in claim order (smallest k first, u-side
/// before v-side). `case_id` gets 1 or 2.
std::vector<Edge> dd_blocking_demand(const Graph& maker, int d, Vertex u, Vertex v, Edge xy, int* case_id = nullptr,
                                     int* i_out = nullptr, int* j_out = nullptr);

/// Degree capping with b1 claims plus ball blocking with the rest.
class DdBreakerA1 : public Cloneable<DdBreakerA1, Strategy> {
 public:
  DdBreakerA1(int d, int b1) : d_(d), b1_(b1) {}

  std::string id() const override { return "dd-breaker-a1"; }
  std::vector<Position> select(const GameState& state) override;
  std::string state_key() const override;

  Edge pair() const { return pair_; }
  int budget_flags() const { return budget_flags_; }
  int delfinal_flags() const { return delfinal_flags_; }

 private:
  int d_, b1_;
  Edge pair_{-1, -1};
  int budget_flags_ = 0;
  int delfinal_flags_ = 0;
};

/// No Maker edge joins B_k(u) and B_{d-1-k}(v) for any k.
bool blocking_sound(const Graph& maker, int d, Vertex u, Vertex v);

// Breaker, a >= 2 -----------------------------------------------------------------

int dd_breaker_a2_bias(int n, int d);

class DdBreakerA2 : public Cloneable<DdBreakerA2, Strategy> {
 public:
  explicit DdBreakerA2(int d) : d_(d) {}
  std::string id() const override { return "dd-breaker-a2"; }
  std::vector<Position> select(const GameState& state) override;

 private:
  int d_;
  bool started_ = false;
  MinDegParams params_;
};

/// |B_d(v)| < 2 D^d for every v, D = max degree (meaningful for D >= 4).
bool ball_bound_holds(const Graph& g, int d);

}  // namespace mbg
