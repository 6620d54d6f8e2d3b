#include "mbg/esb.hpp"

#include <cmath>

#include "mbg/errors.hpp"

namespace mbg {

EsbReport esb_start_value(const WinningSetFamily& family, int a, int b) {
  if (a < 1 || b < 1) throw Error(ErrorCode::InvalidParameters, "biases must be positive");
  const double lb = std::log1p(static_cast<double>(b));
  double sum = 0.0;
  for (const auto& s : family.sets) {
    const double e = 1.0 - static_cast<double>(s.size()) / a;
    sum += s.size() > 64 ? std::exp(e * lb) : std::pow(1.0 + b, e);
  }
  return {sum, sum < 1.0};
}

EsbPotential::EsbPotential(std::shared_ptr<const WinningSetFamily> family, double attacker_bias,
                           double defender_bias, Owner attacker)
    : family_(std::move(family)), attacker_(attacker) {
  const auto& f = *family_;
  const std::size_t m = f.max_set_size();
  incidence_.resize(f.universe_size);
  owner_.assign(f.universe_size, Owner::Unclaimed);
  unclaimed_.resize(f.sets.size());
  defender_.assign(f.sets.size(), 0);
  counts_.assign(f.universe_size, std::vector<std::uint32_t>(m + 1, 0));
  pow_.resize(m + 1);
  const long double lb = std::log1p(static_cast<long double>(defender_bias));
  for (std::size_t u = 0; u <= m; ++u) pow_[u] = std::exp(-static_cast<long double>(u) / attacker_bias * lb);
  for (std::size_t i = 0; i < f.sets.size(); ++i) {
    unclaimed_[i] = static_cast<std::uint32_t>(f.sets[i].size());
    for (Position p : f.sets[i]) incidence_[p].push_back(static_cast<std::uint32_t>(i));
    contribute(i, +1);
  }
}

void EsbPotential::contribute(std::size_t set, int sign) {
  if (defender_[set] != 0) return;
  const std::uint32_t u = unclaimed_[set];
  for (Position q : family_->sets[set]) {
    if (owner_[q] == Owner::Unclaimed) counts_[q][u] += static_cast<std::uint32_t>(sign);
  }
}

void EsbPotential::set_owner(Position p, Owner o) {
  const Owner old = owner_[p];
  if (old == o) return;
  for (std::uint32_t s : incidence_[p]) contribute(s, -1);
  auto shift = [&](Owner who, int sign) {
    if (who == Owner::Unclaimed) return;
    for (std::uint32_t s : incidence_[p]) {
      if (who == attacker_) {
        unclaimed_[s] = static_cast<std::uint32_t>(static_cast<int>(unclaimed_[s]) - sign);
      } else {
        unclaimed_[s] = static_cast<std::uint32_t>(static_cast<int>(unclaimed_[s]) - sign);
        defender_[s] = static_cast<std::uint32_t>(static_cast<int>(defender_[s]) + sign);
      }
    }
  };
  shift(old, -1);
  owner_[p] = o;
  shift(o, +1);
  for (std::uint32_t s : incidence_[p]) contribute(s, +1);
}

void EsbPotential::sync(const Board& board) {
  for (Position p = 0; p < owner_.size(); ++p) {
    const Owner o = board.owner(p);
    if (o != owner_[p]) set_owner(p, o);
  }
}

long double EsbPotential::value() const {
  long double sum = 0;
  for (std::size_t i = 0; i < unclaimed_.size(); ++i) {
    if (defender_[i] == 0) sum += pow_[unclaimed_[i]];
  }
  return sum;
}

long double EsbPotential::weight(Position p) const {
  long double w = 0;
  const auto& c = counts_[p];
  for (std::size_t u = 0; u < c.size(); ++u) {
    if (c[u] != 0) w += c[u] * pow_[u];
  }
  return w;
}

std::size_t EsbPotential::live_sets() const {
  std::size_t k = 0;
  for (auto d : defender_) k += d == 0;
  return k;
}

Position EsbPotential::best() const {
  Position arg = owner_.size();
  long double top = -1;
  for (Position p = 0; p < owner_.size(); ++p) {
    if (owner_[p] != Owner::Unclaimed) continue;
    const long double w = weight(p);
    if (arg == owner_.size() || w > top * (1 + 1e-12L)) {
      arg = p;
      top = w;
    }
  }
  return arg;
}

std::vector<Position> EsbPotential::take(std::size_t count) {
  const Owner defender = attacker_ == Owner::Maker ? Owner::Breaker : Owner::Maker;
  std::vector<Position> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Position p = best();
    if (p == owner_.size()) break;
    set_owner(p, defender);
    out.push_back(p);
  }
  return out;
}

std::vector<Position> esb_breaker_select(const FamilyGameState& state) {
  EsbPotential pot(state.family_ptr(), state.a(), state.b());
  pot.sync(state.board());
  return pot.take(state.claims_due());
}

std::vector<Position> EsbBreaker::select(const FamilyGameState& state) {
  if (!potential_ || potential_->size() != state.board().size()) {
    potential_ = std::make_shared<EsbPotential>(state.family_ptr(), state.a(), state.b());
  } else if (potential_.use_count() > 1) {
    potential_ = std::make_shared<EsbPotential>(*potential_);
  }
  potential_->sync(state.board());
  auto picks = potential_->take(state.claims_due());
  if (invariant_checks()) {
    const double scaled = static_cast<double>((1.0L + state.b()) * potential_->value());
    history_.push_back(scaled);
    if (!(scaled < 1.0)) violation("esb-potential", {{"value", scaled}});
  }
  return picks;
}

}  // namespace mbg
