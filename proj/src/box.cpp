#include "mbg/box.hpp"

#include <algorithm>

#include "mbg/errors.hpp"

namespace mbg {

double harmonic(int m) {
  double h = 0.0;
  for (int i = 1; i <= m; ++i) h += 1.0 / i;
  return h;
}

bool box_game_condition(int r, int k, int a, int opponent_bias) {
  if (r < 1 || k < 1 || a < 1) throw Error(ErrorCode::InvalidParameters, "r, k and a must be positive");
  if (opponent_bias != 1 && opponent_bias != 2) {
    throw Error(ErrorCode::InvalidParameters, "opponent bias must be 1 or 2");
  }
  const double rhs = (a - 1) * harmonic(k - 1) / opponent_bias;
  return r <= rhs + 1e-12;
}

std::vector<Position> box_maker_select(const FamilyGameState& state, BoxPolicy policy) {
  const auto& board = state.board();
  auto out = box_select(
      state.family().sets, [&](Position p) { return board.owner(p); }, Owner::Maker, state.claims_due(), policy);
  if (out.size() < state.claims_due()) {
    for (Position p : board.unclaimed_positions()) {
      if (out.size() == state.claims_due()) break;
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
  }
  return out;
}

std::vector<Position> BoxMaker::select(const FamilyGameState& state) {
  if (!state.family().pairwise_disjoint()) {
    throw Error(ErrorCode::StrategyInapplicable, "box strategy needs pairwise disjoint sets");
  }
  return box_maker_select(state, policy_);
}

}  // namespace mbg
