#include "mbg/board.hpp"

#include <algorithm>
#include <string>

#include "mbg/errors.hpp"

namespace mbg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameters: return "invalid-parameters";
    case ErrorCode::WrongTurn: return "wrong-turn";
    case ErrorCode::AlreadyClaimed: return "already-claimed-edge";
    case ErrorCode::WrongClaimCount: return "wrong-claim-count";
    case ErrorCode::InvalidPosition: return "invalid-position";
    case ErrorCode::VertexOutOfRange: return "vertex-out-of-range";
    case ErrorCode::StrategyInapplicable: return "strategy-inapplicable";
    case ErrorCode::StrategyFault: return "strategy-fault";
    case ErrorCode::FamilyTooLarge: return "family-too-large";
    case ErrorCode::OverCap: return "over-cap";
    case ErrorCode::BadFormat: return "bad-format";
  }
  return "unknown";
}

std::string_view to_string(Player p) { return p == Player::Maker ? "Maker" : "Breaker"; }

Player parse_player(std::string_view s) {
  if (s == "Maker" || s == "maker") return Player::Maker;
  if (s == "Breaker" || s == "breaker") return Player::Breaker;
  throw Error(ErrorCode::BadFormat, "unknown player '" + std::string(s) + "'");
}

Board::Board(std::size_t positions, int maker_bias, int breaker_bias, Player first)
    : owner_(positions, Owner::Unclaimed),
      maker_bias_(maker_bias),
      breaker_bias_(breaker_bias),
      first_(first),
      to_move_(first),
      unclaimed_(positions) {
  if (maker_bias < 1 || breaker_bias < 1) {
    throw Error(ErrorCode::InvalidParameters, "biases must be at least 1");
  }
}

std::size_t Board::claims_due() const noexcept {
  return std::min<std::size_t>(static_cast<std::size_t>(bias(to_move_)), unclaimed_);
}

std::vector<Position> Board::lowest_unclaimed(std::size_t count) const {
  std::vector<Position> out;
  for (Position p = 0; p < owner_.size() && out.size() < count; ++p) {
    if (owner_[p] == Owner::Unclaimed) out.push_back(p);
  }
  return out;
}

std::vector<Position> Board::unclaimed_positions() const {
  return lowest_unclaimed(owner_.size());
}

void Board::claim(Player player, std::span<const Position> positions) {
  if (player != to_move_) {
    throw Error(ErrorCode::WrongTurn, std::string(to_string(player)) + " moved out of turn");
  }
  if (unclaimed_ == 0) {
    throw Error(ErrorCode::WrongClaimCount, "board is exhausted");
  }
  if (positions.size() != claims_due()) {
    throw Error(ErrorCode::WrongClaimCount,
                "expected " + std::to_string(claims_due()) + " claims, got " +
                    std::to_string(positions.size()));
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Position p = positions[i];
    if (p >= owner_.size()) {
      throw Error(ErrorCode::InvalidPosition, "position " + std::to_string(p) + " out of range");
    }
    if (owner_[p] != Owner::Unclaimed ||
        std::find(positions.begin(), positions.begin() + static_cast<std::ptrdiff_t>(i), p) !=
            positions.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw Error(ErrorCode::AlreadyClaimed, "position " + std::to_string(p) + " is taken");
    }
  }
  const Owner mark = owner_of(player);
  for (Position p : positions) owner_[p] = mark;
  unclaimed_ -= positions.size();
  if (player == Player::Maker) {
    maker_owned_ += positions.size();
    ++maker_turns_;
  } else {
    breaker_owned_ += positions.size();
    ++breaker_turns_;
  }
  log_.push_back(Move{player, {positions.begin(), positions.end()}});
  to_move_ = opponent(player);
}

Move Board::undo() {
  if (log_.empty()) throw Error(ErrorCode::InvalidParameters, "nothing to undo");
  Move last = std::move(log_.back());
  log_.pop_back();
  for (Position p : last.positions) owner_[p] = Owner::Unclaimed;
  unclaimed_ += last.positions.size();
  if (last.player == Player::Maker) {
    maker_owned_ -= last.positions.size();
    --maker_turns_;
  } else {
    breaker_owned_ -= last.positions.size();
    --breaker_turns_;
  }
  to_move_ = last.player;
  return last;
}

}  // namespace mbg
