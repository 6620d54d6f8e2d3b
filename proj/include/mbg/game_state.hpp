#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mbg/board.hpp"
#include "mbg/graph.hpp"

namespace mbg {

/// A biased game on the edge set of K_n. Positions are edge indices in
/// lexicographic (u,v) order, which is also the tie-break of last resort.
class GameState {
 public:
  GameState(int n, int a, int b, Player first = Player::Maker);

  int n() const noexcept { return n_; }
  int a() const noexcept { return board_.bias(Player::Maker); }
  int b() const noexcept { return board_.bias(Player::Breaker); }
  int bias(Player p) const noexcept { return board_.bias(p); }
  Player first() const noexcept { return board_.first(); }
  Player to_move() const noexcept { return board_.to_move(); }

  const Board& board() const noexcept { return board_; }
  const EdgeTable& edges() const noexcept { return *table_; }
  std::size_t edge_total() const noexcept { return board_.size(); }
  Edge edge(Position p) const { return table_->edge(p); }
  Position index(Edge e) const noexcept { return table_->index(e); }
  Position index(Vertex u, Vertex v) const noexcept { return table_->index(u, v); }

  Owner owner(Edge e) const { return board_.owner(index(e)); }
  Owner owner(Vertex u, Vertex v) const { return board_.owner(index(u, v)); }
  Owner owner(Position p) const { return board_.owner(p); }
  bool is_unclaimed(Vertex u, Vertex v) const { return owner(u, v) == Owner::Unclaimed; }

  std::size_t unclaimed_count() const noexcept { return board_.unclaimed_count(); }
  std::size_t claims_due() const noexcept { return board_.claims_due(); }
  bool exhausted() const noexcept { return board_.exhausted(); }
  const std::vector<Move>& log() const noexcept { return board_.log(); }
  int turns_taken(Player p) const noexcept { return board_.turns_taken(p); }

  /// Degree of v in the graph of p's edges.
  int degree(Player p, Vertex v) const {
    return (p == Player::Maker ? maker_degree_ : breaker_degree_).at(static_cast<std::size_t>(v));
  }
  /// Number of unclaimed edges at v.
  int free_degree(Vertex v) const { return n_ - 1 - degree(Player::Maker, v) - degree(Player::Breaker, v); }

  const Graph& maker_graph() const noexcept { return maker_; }
  Graph graph_of(Player p) const;

  void apply_claim(Player player, std::span<const Edge> edges);
  void apply_claim_positions(Player player, std::span<const Position> positions);
  Move undo();

 private:
  void record(Player player, std::span<const Position> positions, int sign);

  int n_;
  std::shared_ptr<const EdgeTable> table_;
  Board board_;
  std::vector<int> maker_degree_;
  std::vector<int> breaker_degree_;
  Graph maker_;
};

GameState new_game(int n, int a, int b, Player first = Player::Maker);
GameState apply_claim(GameState state, Player player, std::span<const Edge> edges);
Graph maker_graph(const GameState& state);

/// Re-applies a move log to a fresh board with the same parameters.
GameState replay(int n, int a, int b, Player first, std::span<const Move> log);

}  // namespace mbg
