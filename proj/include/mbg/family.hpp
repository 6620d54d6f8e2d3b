#pragma once

#include <memory>
#include <span>
#include <vector>

#include <json.hpp>

#include "mbg/board.hpp"
#include "mbg/strategy.hpp"

namespace mbg {

/// Winning sets over positions 0..universe_size-1.
struct WinningSetFamily {
  std::size_t universe_size = 0;
  std::vector<std::vector<Position>> sets;

  /// Throws InvalidParameters on an empty set or an index outside the universe.
  void validate() const;
  bool pairwise_disjoint() const;
  std::size_t max_set_size() const;

  nlohmann::json to_json() const;
  static WinningSetFamily from_json(const nlohmann::json& j);
};

/// A game played directly on a family's positions.
class FamilyGameState {
 public:
  FamilyGameState(std::shared_ptr<const WinningSetFamily> family, int a, int b, Player first = Player::Maker);
  FamilyGameState(WinningSetFamily family, int a, int b, Player first = Player::Maker);

  const WinningSetFamily& family() const noexcept { return *family_; }
  std::shared_ptr<const WinningSetFamily> family_ptr() const noexcept { return family_; }
  const Board& board() const noexcept { return board_; }

  int a() const noexcept { return board_.bias(Player::Maker); }
  int b() const noexcept { return board_.bias(Player::Breaker); }
  Player to_move() const noexcept { return board_.to_move(); }
  std::size_t claims_due() const noexcept { return board_.claims_due(); }
  std::size_t unclaimed_count() const noexcept { return board_.unclaimed_count(); }
  bool exhausted() const noexcept { return board_.exhausted(); }
  const std::vector<Move>& log() const noexcept { return board_.log(); }
  Owner owner(Position p) const { return board_.owner(p); }

  void apply_claim_positions(Player player, std::span<const Position> positions) {
    board_.claim(player, positions);
  }
  Move undo() { return board_.undo(); }

  /// Some winning set is entirely Maker's.
  bool maker_completed() const;
  /// Set i has no Breaker position.
  bool surviving(std::size_t i) const;
  std::size_t unclaimed_in(std::size_t i) const;

 private:
  std::shared_ptr<const WinningSetFamily> family_;
  Board board_;
};

using FamilyStrategy = BasicStrategy<FamilyGameState>;

}  // namespace mbg
