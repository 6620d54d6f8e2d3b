#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mbg/family.hpp"

namespace mbg {

struct EsbReport {
  double value = 0.0;
  bool breaker_wins = true;  // value < 1
};

/// Sum over A of (1+b)^(1-|A|/a).
EsbReport esb_start_value(const WinningSetFamily& family, int a, int b);

/// Surviving-set potential for a family, kept in sync with a board.
///
/// The attacker tries to own a whole set, the defender to touch every set.
/// A set without defender positions and with u unclaimed positions weighs
/// (1+defender_bias)^(-u/attacker_bias). Per position we keep exact counts
/// of the live sets through it, bucketed by u, so weights never drift.
class EsbPotential {
 public:
  EsbPotential(std::shared_ptr<const WinningSetFamily> family, double attacker_bias, double defender_bias,
               Owner attacker = Owner::Maker);

  /// Folds in every ownership difference against `board` (claims and undos).
  void sync(const Board& board);
  void set_owner(Position p, Owner o);

  Owner owner(Position p) const { return owner_[p]; }
  long double value() const;
  long double weight(Position p) const;
  long double set_weight(std::size_t unclaimed) const { return pow_[unclaimed]; }

  /// Best unclaimed position for the defender (lowest index among ties
  /// within 1e-12 relative); size() if none is unclaimed.
  Position best() const;
  /// Sequential greedy: picks `count` positions, marking each as the
  /// defender's before choosing the next.
  std::vector<Position> take(std::size_t count);

  std::size_t size() const noexcept { return owner_.size(); }
  std::size_t live_sets() const;

 private:
  void contribute(std::size_t set, int sign);

  std::shared_ptr<const WinningSetFamily> family_;
  Owner attacker_;
  std::vector<std::vector<std::uint32_t>> incidence_;
  std::vector<Owner> owner_;
  std::vector<std::uint32_t> unclaimed_;  // per set
  std::vector<std::uint32_t> defender_;   // per set
  std::vector<std::vector<std::uint32_t>> counts_;  // [position][u]
  std::vector<long double> pow_;
};

/// Breaker's greedy potential move on a family game.
std::vector<Position> esb_breaker_select(const FamilyGameState& state);

/// ESB play for Breaker, incremental across calls. With invariant checks on,
/// records a violation whenever (1+b) times the surviving potential is not
/// below 1 after its own turn.
class EsbBreaker : public Cloneable<EsbBreaker, FamilyStrategy> {
 public:
  std::string id() const override { return "esb-breaker"; }
  std::vector<Position> select(const FamilyGameState& state) override;

  /// Scaled potential measured after each of this strategy's turns.
  const std::vector<double>& history() const { return history_; }

 private:
  std::shared_ptr<EsbPotential> potential_;
  std::vector<double> history_;
};

}  // namespace mbg
