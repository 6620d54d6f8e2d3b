#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbg/game_state.hpp"
#include "mbg/graph.hpp"
#include "mbg/strategy.hpp"

namespace mbg {

/// Monotone target property evaluated on Maker's graph.
struct Property {
  enum class Kind { Diameter, MinDegree, Expansion, None };

  Kind kind = Kind::Diameter;
  int first = 2;
  int second = 0;

  static Property diameter_at_most(int d) { return {Kind::Diameter, d, 0}; }
  static Property min_degree_at_least(int k) { return {Kind::MinDegree, k, 0}; }
  static Property expansion(int r, int s) { return {Kind::Expansion, r, s}; }
  static Property none() { return {Kind::None, 0, 0}; }

  bool holds(const Graph& maker) const;
  /// "diameter:2", "mindeg:5", "expansion:2:3" or "none".
  std::string id() const;
  static Property parse(std::string_view id);

  bool operator==(const Property&) const = default;
};

/// Cheaper than diameter(g) <= d: bails out on the first far pair.
bool diameter_at_most(const Graph& g, int d);

struct ClaimRecord {
  int turn = 0;
  Player player = Player::Maker;
  std::vector<Edge> edges;

  bool operator==(const ClaimRecord&) const = default;
};

struct StrategyFaultInfo {
  Player player = Player::Maker;
  std::string strategy;
  std::string message;
};

struct Transcript {
  int n = 0;
  int a = 1;
  int b = 1;
  Player first = Player::Maker;
  std::string maker_id;
  std::string breaker_id;
  std::uint64_t seed = 0;
  Property property;

  std::vector<ClaimRecord> claims;
  bool verdict = false;  // property holds for Maker's final graph
  int rounds = 0;
  bool early_stop = false;
  std::vector<Annotation> annotations;
  std::optional<StrategyFaultInfo> fault;

  Player winner() const { return verdict ? Player::Maker : Player::Breaker; }
  std::vector<std::string> flags() const;
  int violations() const;

  /// Line-delimited JSON: header, one line per claim, footer.
  std::string to_jsonl() const;
  static Transcript from_jsonl(std::string_view text);
};

struct ReplayResult {
  GameState state;
  bool verdict = false;
  bool matches_footer = false;
};

/// Rebuilds the final board from the claims and re-evaluates the property.
ReplayResult replay_transcript(const Transcript& t);

struct MatchOptions {
  bool early_stop = true;
  bool check_invariants = false;
  std::uint64_t seed = 0;
};

/// Plays `maker` against `breaker` from a fresh state until the board is
/// exhausted, or until the property already holds when early stop is on.
Transcript run_match(GameState state, Strategy& maker, Strategy& breaker, const Property& property,
                     const MatchOptions& options = {});

}  // namespace mbg
