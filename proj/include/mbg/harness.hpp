#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbg/game_state.hpp"
#include "mbg/strategy.hpp"
#include "mbg/transcript.hpp"

namespace mbg {

// Strategy registry ---------------------------------------------------------------

struct StrategySpec {
  std::string id;
  nlohmann::json params = nlohmann::json::object();

  /// "random" or {"id": "exp-maker", "r": 2, "s": 3}.
  static StrategySpec parse(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct StrategyInfo {
  std::string id;
  std::string side;  // "maker", "breaker" or "either"
  bool stochastic = false;
  std::vector<std::string> params;
  std::string summary;
};

const std::vector<StrategyInfo>& strategy_registry();
const StrategyInfo* find_strategy(const std::string& id);

/// Builds a fresh strategy for a game on K_n with biases (a, b). `seed` feeds
/// stochastic strategies. Unknown ids and bad params throw InvalidParameters.
std::unique_ptr<Strategy> make_strategy(const StrategySpec& spec, int n, int a, int b, std::uint64_t seed);

// Experiments -----------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x);
/// RNG stream of one match: fixed function of the experiment seed and the
/// match index, so serial and parallel runs agree.
std::uint64_t match_stream(std::uint64_t seed, std::size_t match_index);

/// Breaker bias either fixed or derived from a parameter calculator.
struct BiasRule {
  std::optional<int> fixed;
  std::string from;  // "d2-breaker", "dd-breaker", "dd-breaker-a2"
  nlohmann::json params = nlohmann::json::object();

  int resolve(int n) const;
};

struct ExperimentConfig {
  std::string name;
  Property property = Property::diameter_at_most(2);
  std::vector<int> ns;
  int a = 1;
  BiasRule b;
  Player first = Player::Maker;
  std::vector<StrategySpec> makers;
  std::vector<StrategySpec> breakers;
  std::vector<std::uint64_t> seeds;
  int repetitions = 1;
  bool early_stop = true;
  bool check_invariants = false;
  int workers = 0;  // 0: hardware concurrency
  std::string csv_path;
  std::string transcript_dir;

  /// Validates ids, biases and seeds; throws InvalidParameters.
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct MatchRow {
  std::size_t match = 0;
  std::uint64_t seed = 0;
  int repetition = 0;
  std::string maker;
  std::string breaker;
  int n = 0, a = 0, b = 0;
  std::string winner;  // Maker, Breaker, or fault
  int rounds = 0;
  std::vector<std::string> flags;
  int invariant_violations = 0;
};

struct ExperimentResult {
  std::vector<MatchRow> rows;
  std::vector<Transcript> transcripts;  // same order as rows

  int violations() const;
  int faults() const;
};

/// The frozen CSV header.
const std::string& csv_header();
std::string to_csv(const std::vector<MatchRow>& rows);

/// Runs every (n, maker, breaker, seed, repetition) match on a worker pool;
/// rows come back in match order.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes the CSV and one .jsonl transcript per match where the config asks
/// for them. Throws BadFormat when a path cannot be written.
void write_outputs(const ExperimentConfig& config, const ExperimentResult& result);

}  // namespace mbg
