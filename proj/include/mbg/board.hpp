#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace mbg {

using Position = std::size_t;

enum class Player : std::uint8_t { Maker, Breaker };
enum class Owner : std::uint8_t { Unclaimed, Maker, Breaker };

constexpr Player opponent(Player p) noexcept {
  return p == Player::Maker ? Player::Breaker : Player::Maker;
}
constexpr Owner owner_of(Player p) noexcept {
  return p == Player::Maker ? Owner::Maker : Owner::Breaker;
}

std::string_view to_string(Player p);
Player parse_player(std::string_view s);

struct Move {
  Player player;
  std::vector<Position> positions;

  bool operator==(const Move&) const = default;
};

/// Ownership of an abstract set of positions under (a:b) turn scheduling.
///
/// The player to move must claim exactly min(bias, unclaimed) positions per
/// turn; when the board runs short the turn is truncated to whatever is left.
class Board {
 public:
  Board(std::size_t positions, int maker_bias, int breaker_bias,
        Player first = Player::Maker);

  std::size_t size() const noexcept { return owner_.size(); }
  Owner owner(Position p) const { return owner_.at(p); }
  bool is_unclaimed(Position p) const { return owner_.at(p) == Owner::Unclaimed; }
  int bias(Player p) const noexcept { return p == Player::Maker ? maker_bias_ : breaker_bias_; }
  Player first() const noexcept { return first_; }
  Player to_move() const noexcept { return to_move_; }

  std::size_t unclaimed_count() const noexcept { return unclaimed_; }
  std::size_t owned_count(Player p) const noexcept {
    return p == Player::Maker ? maker_owned_ : breaker_owned_;
  }
  std::size_t claims_due() const noexcept;
  bool exhausted() const noexcept { return unclaimed_ == 0; }

  int turns_taken(Player p) const noexcept {
    return p == Player::Maker ? maker_turns_ : breaker_turns_;
  }
  const std::vector<Move>& log() const noexcept { return log_; }

  /// Lowest-index unclaimed positions, at most `count` of them.
  std::vector<Position> lowest_unclaimed(std::size_t count) const;
  std::vector<Position> unclaimed_positions() const;

  /// Validates and applies one full turn for `player`.
  void claim(Player player, std::span<const Position> positions);

  /// Reverts the most recent turn and returns it.
  Move undo();

 private:
  std::vector<Owner> owner_;
  int maker_bias_;
  int breaker_bias_;
  Player first_;
  Player to_move_;
  std::size_t unclaimed_;
  std::size_t maker_owned_ = 0;
  std::size_t breaker_owned_ = 0;
  int maker_turns_ = 0;
  int breaker_turns_ = 0;
  std::vector<Move> log_;
};

}  // namespace mbg
