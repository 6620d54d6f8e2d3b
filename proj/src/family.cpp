#include "mbg/family.hpp"

#include <algorithm>
#include <string>

#include "mbg/errors.hpp"

namespace mbg {

void WinningSetFamily::validate() const {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty()) throw Error(ErrorCode::InvalidParameters, "winning set " + std::to_string(i) + " is empty");
    for (Position p : sets[i]) {
      if (p >= universe_size) {
        throw Error(ErrorCode::InvalidParameters,
                    "winning set " + std::to_string(i) + " has position " + std::to_string(p) +
                        " outside a universe of " + std::to_string(universe_size));
      }
    }
  }
}

bool WinningSetFamily::pairwise_disjoint() const {
  std::vector<bool> seen(universe_size);
  for (const auto& s : sets) {
    for (Position p : s) {
      if (seen[p]) return false;
      seen[p] = true;
    }
  }
  return true;
}

std::size_t WinningSetFamily::max_set_size() const {
  std::size_t m = 0;
  for (const auto& s : sets) m = std::max(m, s.size());
  return m;
}

nlohmann::json WinningSetFamily::to_json() const {
  return {{"universe_size", universe_size}, {"sets", sets}};
}

WinningSetFamily WinningSetFamily::from_json(const nlohmann::json& j) {
  WinningSetFamily f;
  try {
    f.universe_size = j.at("universe_size").get<std::size_t>();
    f.sets = j.at("sets").get<std::vector<std::vector<Position>>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadFormat, e.what());
  }
  f.validate();
  return f;
}

FamilyGameState::FamilyGameState(std::shared_ptr<const WinningSetFamily> family, int a, int b, Player first)
    : family_(std::move(family)), board_(family_->universe_size, a, b, first) {
  family_->validate();
}

FamilyGameState::FamilyGameState(WinningSetFamily family, int a, int b, Player first)
    : FamilyGameState(std::make_shared<const WinningSetFamily>(std::move(family)), a, b, first) {}

bool FamilyGameState::maker_completed() const {
  return std::any_of(family_->sets.begin(), family_->sets.end(), [&](const auto& s) {
    return std::all_of(s.begin(), s.end(), [&](Position p) { return board_.owner(p) == Owner::Maker; });
  });
}

bool FamilyGameState::surviving(std::size_t i) const {
  const auto& s = family_->sets.at(i);
  return std::none_of(s.begin(), s.end(), [&](Position p) { return board_.owner(p) == Owner::Breaker; });
}

std::size_t FamilyGameState::unclaimed_in(std::size_t i) const {
  const auto& s = family_->sets.at(i);
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [&](Position p) { return board_.owner(p) == Owner::Unclaimed; }));
}

}  // namespace mbg
