#include "mbg/game_state.hpp"

#include <cassert>
#include <map>
#include <mutex>
#include <string>

#include "mbg/errors.hpp"

namespace mbg {
namespace {

std::shared_ptr<const EdgeTable> shared_table(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const EdgeTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const EdgeTable>(n);
  return slot;
}

int checked_n(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidParameters, "n must be at least 2, got " + std::to_string(n));
  return n;
}

}  // namespace

GameState::GameState(int n, int a, int b, Player first)
    : n_(checked_n(n)),
      table_(shared_table(n)),
      board_(edge_count(n), a, b, first),
      maker_degree_(static_cast<std::size_t>(n)),
      breaker_degree_(static_cast<std::size_t>(n)),
      maker_(n) {}

Graph GameState::graph_of(Player p) const {
  if (p == Player::Maker) return maker_;
  Graph g(n_);
  const Owner mark = owner_of(p);
  for (Position i = 0; i < board_.size(); ++i) {
    if (board_.owner(i) == mark) {
      const Edge e = table_->edge(i);
      g.add_edge(e.u, e.v);
    }
  }
  return g;
}

void GameState::record(Player player, std::span<const Position> positions, int sign) {
  auto& deg = player == Player::Maker ? maker_degree_ : breaker_degree_;
  for (Position p : positions) {
    const Edge e = table_->edge(p);
    deg[static_cast<std::size_t>(e.u)] += sign;
    deg[static_cast<std::size_t>(e.v)] += sign;
    if (player == Player::Maker) {
      if (sign > 0) {
        maker_.add_edge(e.u, e.v);
      } else {
        maker_.remove_edge(e.u, e.v);
      }
    }
  }
}

void GameState::apply_claim_positions(Player player, std::span<const Position> positions) {
  board_.claim(player, positions);
  record(player, positions, +1);
  assert(board_.owned_count(Player::Maker) + board_.owned_count(Player::Breaker) +
             board_.unclaimed_count() ==
         board_.size());
}

void GameState::apply_claim(Player player, std::span<const Edge> edges) {
  std::vector<Position> positions;
  positions.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v >= n_ || e.u == e.v) {
      throw Error(ErrorCode::InvalidPosition,
                  "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not in K_" +
                      std::to_string(n_));
    }
    positions.push_back(index(e));
  }
  apply_claim_positions(player, positions);
}

Move GameState::undo() {
  Move last = board_.undo();
  record(last.player, last.positions, -1);
  return last;
}

GameState new_game(int n, int a, int b, Player first) { return GameState(n, a, b, first); }

GameState apply_claim(GameState state, Player player, std::span<const Edge> edges) {
  state.apply_claim(player, edges);
  return state;
}

Graph maker_graph(const GameState& state) { return state.maker_graph(); }

GameState replay(int n, int a, int b, Player first, std::span<const Move> log) {
  GameState s(n, a, b, first);
  for (const Move& m : log) s.apply_claim_positions(m.player, m.positions);
  return s;
}

}  // namespace mbg
