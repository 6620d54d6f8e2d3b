#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mbg/board.hpp"

namespace mbg {

/// Free-form label a strategy attaches to the transcript. `round` is stamped
/// by the match runner when the note is collected.
struct Annotation {
  int round = 0;
  Player player = Player::Maker;
  std::string label;
  nlohmann::json data;
};

/// A move selector for one side of a game played on `State`. Strategies may
/// keep bookkeeping between calls; `clone` must copy it so searches can
/// branch.
template <class State>
class BasicStrategy {
 public:
  virtual ~BasicStrategy() = default;

  virtual std::string id() const = 0;
  /// Positions to claim; must have exactly state.claims_due() entries.
  virtual std::vector<Position> select(const State& state) = 0;
  virtual std::unique_ptr<BasicStrategy> clone() const = 0;
  /// Bookkeeping that changes future choices beyond what the board shows.
  /// Searches fold it into their memo keys.
  virtual std::string state_key() const { return {}; }

  void set_invariant_checks(bool on) { checks_ = on; }
  bool invariant_checks() const { return checks_; }
  std::vector<Annotation> take_notes() { return std::exchange(notes_, {}); }

 protected:
  void note(std::string label, nlohmann::json data = {}) {
    notes_.push_back(Annotation{0, Player::Maker, std::move(label), std::move(data)});
  }
  void flag(const std::string& name, nlohmann::json detail = {}) {
    note("flag", {{"name", name}, {"detail", std::move(detail)}});
  }
  void violation(const std::string& name, nlohmann::json detail = {}) {
    note("violation", {{"name", name}, {"detail", std::move(detail)}});
  }

 private:
  bool checks_ = false;
  std::vector<Annotation> notes_;
};

class GameState;
using Strategy = BasicStrategy<GameState>;

/// CRTP helper providing clone() through the copy constructor.
template <class Derived, class Base>
class Cloneable : public Base {
 public:
  std::unique_ptr<Base> clone() const override {
    return std::make_unique<Derived>(static_cast<const Derived&>(*this));
  }
};

}  // namespace mbg
