#pragma once

#include <cstdint>
#include <random>

#include "mbg/game_state.hpp"
#include "mbg/strategy.hpp"

namespace mbg {

/// Uniformly random unclaimed edges. Plays either side.
class RandomPlayer : public Cloneable<RandomPlayer, Strategy> {
 public:
  explicit RandomPlayer(std::uint64_t seed = 0) : rng_(seed) {}
  std::string id() const override { return "random"; }
  std::vector<Position> select(const GameState& state) override;

 private:
  std::mt19937_64 rng_;
};

/// Lowest-index unclaimed edges. Useless on purpose.
class LowestPlayer : public Cloneable<LowestPlayer, Strategy> {
 public:
  std::string id() const override { return "lowest"; }
  std::vector<Position> select(const GameState& state) override;
};

/// Edge at the vertex of smallest Maker degree, towards the partner of
/// smallest Maker degree.
class GreedyDegreeMaker : public Cloneable<GreedyDegreeMaker, Strategy> {
 public:
  std::string id() const override { return "greedy-degree"; }
  std::vector<Position> select(const GameState& state) override;
};

/// Edge that brings the most new pairs within distance two.
class TwoPathGreedyMaker : public Cloneable<TwoPathGreedyMaker, Strategy> {
 public:
  std::string id() const override { return "two-path-greedy"; }
  std::vector<Position> select(const GameState& state) override;
};

/// Shortens Maker's path between the endpoints of Breaker's first edge:
/// minimises dist(u,x) + 1 + dist(y,v) over unclaimed xy (unreachable
/// counts as n).
class GreedyPathMaker : public Cloneable<GreedyPathMaker, Strategy> {
 public:
  std::string id() const override { return "greedy-path"; }
  std::vector<Position> select(const GameState& state) override;
};

}  // namespace mbg
