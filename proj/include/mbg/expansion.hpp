#pragma once

#include <memory>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "mbg/esb.hpp"
#include "mbg/family.hpp"
#include "mbg/game_state.hpp"

namespace mbg {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(int n, int k);

struct ExpansionParams {
  int n = 0, r = 0, s = 0;
  double a = 1, b = 1;
  bool case_a = false, case_b = false, case_c = false;
  bool r_gt_s = false;  // only case (c) is evaluated then
  BigInt family_size;   // C(n,r) C(n-r,s)
  BigInt distinct_sets; // halved when r = s

  bool any() const { return case_a || case_b || case_c; }
  nlohmann::json to_json() const;
};

ExpansionParams exp_condition(int n, int r, int s, double a, double b);

constexpr std::size_t kDefaultFamilyCap = 2'000'000;

/// One set per unordered disjoint (R,S): the edges of K_n between R and S,
/// as edge indices.
WinningSetFamily exp_family(int n, int r, int s, std::size_t cap = kDefaultFamilyCap);

/// C(n,r) C(n-r,s) (1+a)^(-rs/b), divided by two when r = s.
double exp_closed_form(int n, int r, int s, double a, double b);

/// Maker as ESB-Breaker of the (R,S) family; Breaker plays the family's
/// Maker with bias `virtual_b` (the real b when 0).
class ExpMaker : public Cloneable<ExpMaker, Strategy> {
 public:
  ExpMaker(int r, int s, double virtual_b = 0, std::size_t cap = kDefaultFamilyCap)
      : r_(r), s_(s), virtual_b_(virtual_b), cap_(cap) {}

  std::string id() const override { return "exp-maker"; }
  std::vector<Position> select(const GameState& state) override;

  /// Shared with clones until one of them moves.
  std::vector<Position> select_count(const GameState& state, std::size_t count);
  const EsbPotential* potential() const { return potential_.get(); }

 private:
  void prepare(const GameState& state);

  int r_, s_;
  double virtual_b_;
  std::size_t cap_;
  std::shared_ptr<EsbPotential> potential_;
};

std::vector<Position> exp_maker_select(const GameState& state, const ExpansionParams& params, double virtual_b);

}  // namespace mbg
