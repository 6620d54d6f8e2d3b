#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "mbg/errors.hpp"
#include "mbg/game_state.hpp"
#include "mbg/strategy.hpp"

namespace mbg {

/// Ownership of E(K_n) up to vertex relabelling, plus whose turn it is and
/// how many claims are left in that turn.
struct CanonicalKey {
  std::uint32_t maker = 0;
  std::uint32_t breaker = 0;
  std::uint8_t side = 0;
  std::uint8_t remaining = 0;

  bool operator==(const CanonicalKey&) const = default;
  std::uint64_t pack() const noexcept {
    return (static_cast<std::uint64_t>(maker) << 32 | breaker) * 0x9E3779B97F4A7C15ULL ^
           (static_cast<std::uint64_t>(side) << 8 | remaining);
  }
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept { return static_cast<std::size_t>(k.pack()); }
};

/// Exact: minimum encoding over all relabellings that sort vertices by
/// (Maker degree, Breaker degree). n <= 8.
CanonicalKey canonical_key(int n, std::uint32_t maker, std::uint32_t breaker, Player side, int remaining);
CanonicalKey canonical_key(const GameState& state);

struct SolveOptions {
  std::size_t edge_cap = 15;
  std::size_t memo_cap = 40'000'000;
  bool memo = true;
  bool canonicalize = true;
  bool cutoffs = true;
};

struct SolveResult {
  Player winner = Player::Maker;
  std::size_t states_visited = 0;
  double elapsed = 0.0;  // seconds
};

/// Value of D_d(a:b) on K_n under optimal play.
SolveResult solve(int n, int a, int b, int d, Player first = Player::Maker, const SolveOptions& options = {});

nlohmann::json solve_json(int n, int a, int b, int d, Player first, const SolveResult& r);

// One-sided verification ---------------------------------------------------

struct VerifyOptions {
  std::size_t position_cap = 21;
  std::size_t memo_cap = 20'000'000;
};

struct VerifyResult {
  bool holds = true;
  std::size_t states = 0;
  std::vector<Move> counterexample;  // a losing line when !holds
};

/// true: the scripted side reached its goal; false: it failed; nullopt: play on.
template <class State>
using Judge = std::function<std::optional<bool>(const State&, const BasicStrategy<State>&)>;

/// Plays `scripted` for `side` against every line of the other side.
template <class State>
VerifyResult verify_one_sided(const State& start, const BasicStrategy<State>& scripted, Player side,
                              const Judge<State>& judge, const VerifyOptions& options = {});

/// D_d goal: Maker wants diameter <= d, Breaker wants it to fail.
VerifyResult verify_one_sided(int n, int a, int b, int d, const Strategy& scripted, Player side,
                              const VerifyOptions& options = {});

/// Early decisions for D_d on a K_n board: Maker has diameter <= d already,
/// or some pair cannot be joined within d using Maker and unclaimed edges.
std::optional<Player> diameter_decided(const GameState& state, int d);

// implementation -----------------------------------------------------------

namespace detail {

template <class State>
class OneSidedSearch {
 public:
  OneSidedSearch(Player side, const Judge<State>& judge, const VerifyOptions& options)
      : side_(side), judge_(judge), options_(options) {}

  bool run(State& state, std::unique_ptr<BasicStrategy<State>> strategy) {
    ++states_;
    if (auto verdict = judge_(state, *strategy)) {
      if (!*verdict && counterexample_.empty()) counterexample_ = state.log();
      return *verdict;
    }
    if (state.exhausted()) throw Error(ErrorCode::InvalidParameters, "judge left an exhausted board undecided");

    std::string key = memo_key(state, *strategy);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    bool result;
    if (state.to_move() == side_) {
      const auto picks = strategy->select(state);
      strategy->take_notes();
      state.apply_claim_positions(side_, picks);
      result = run(state, std::move(strategy));
      state.undo();
    } else {
      result = true;
      const auto free = state.board().unclaimed_positions();
      const std::size_t k = state.claims_due();
      std::vector<std::size_t> idx(k);
      for (std::size_t i = 0; i < k; ++i) idx[i] = i;
      std::vector<Position> claim(k);
      while (true) {
        for (std::size_t i = 0; i < k; ++i) claim[i] = free[idx[i]];
        state.apply_claim_positions(state.to_move(), claim);
        const bool ok = run(state, strategy->clone());
        state.undo();
        if (!ok) {
          result = false;
          break;
        }
        // next combination
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == free.size() - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    if (memo_.size() >= options_.memo_cap) {
      throw Error(ErrorCode::OverCap, "memo table reached " + std::to_string(memo_.size()) + " entries");
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  std::size_t states() const { return states_; }
  std::vector<Move> counterexample() const { return counterexample_; }

 private:
  static std::string memo_key(const State& state, const BasicStrategy<State>& strategy) {
    const auto& board = state.board();
    std::string key;
    key.reserve(board.size() + 2);
    for (Position p = 0; p < board.size(); ++p) key.push_back(static_cast<char>('0' + static_cast<int>(board.owner(p))));
    key.push_back(state.to_move() == Player::Maker ? 'M' : 'B');
    key.push_back('|');
    key += strategy.state_key();
    return key;
  }

  Player side_;
  const Judge<State>& judge_;
  VerifyOptions options_;
  std::size_t states_ = 0;
  std::unordered_map<std::string, bool> memo_;
  std::vector<Move> counterexample_;
};

}  // namespace detail

template <class State>
VerifyResult verify_one_sided(const State& start, const BasicStrategy<State>& scripted, Player side,
                              const Judge<State>& judge, const VerifyOptions& options) {
  if (start.board().size() > options.position_cap) {
    throw Error(ErrorCode::OverCap, std::to_string(start.board().size()) + " positions exceed the cap of " +
                                        std::to_string(options.position_cap));
  }
  State state = start;
  detail::OneSidedSearch<State> search(side, judge, options);
  VerifyResult r;
  r.holds = search.run(state, scripted.clone());
  r.states = search.states();
  if (!r.holds) r.counterexample = search.counterexample();
  return r;
}

}  // namespace mbg
