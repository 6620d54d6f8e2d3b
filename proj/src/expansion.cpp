#include "mbg/expansion.hpp"

#include <algorithm>
#include <cmath>

#include "mbg/errors.hpp"

namespace mbg {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

nlohmann::json ExpansionParams::to_json() const {
  return {{"n", n},
          {"r", r},
          {"s", s},
          {"a", a},
          {"b", b},
          {"case_a", case_a},
          {"case_b", case_b},
          {"case_c", case_c},
          {"r_gt_s", r_gt_s},
          {"family_size", family_size.str()},
          {"distinct_sets", distinct_sets.str()}};
}

ExpansionParams exp_condition(int n, int r, int s, double a, double b) {
  if (r < 1 || s < 1) throw Error(ErrorCode::InvalidParameters, "r and s must be positive");
  if (r + s > n) throw Error(ErrorCode::InvalidParameters, "r + s exceeds n");
  ExpansionParams p;
  p.n = n;
  p.r = r;
  p.s = s;
  p.a = a;
  p.b = b;
  const double ln = std::log(static_cast<double>(n));
  const double ra = r * std::log1p(a);
  p.r_gt_s = r > s;
  if (!p.r_gt_s) {
    p.case_a = 2 * b * ln < ra;
    p.case_b = b * ln < ra && ra <= 2 * b * ln && s > r * b * ln / (ra - b * ln);
  }
  p.case_c = n - s < n * ra / (b * ln + ra);
  p.family_size = binomial(n, r) * binomial(n - r, s);
  p.distinct_sets = r == s ? p.family_size / 2 : p.family_size;
  return p;
}

double exp_closed_form(int n, int r, int s, double a, double b) {
  const double count = static_cast<double>(binomial(n, r) * binomial(n - r, s));
  return count / (r == s ? 2.0 : 1.0) * std::pow(1 + a, -static_cast<double>(r) * s / b);
}

namespace {

template <class Fn>
void for_each_subset(const std::vector<int>& pool, int k, Fn&& fn) {
  const int m = static_cast<int>(pool.size());
  if (k > m) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::vector<int> pick(static_cast<std::size_t>(k));
  while (true) {
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    fn(pick);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

WinningSetFamily exp_family(int n, int r, int s, std::size_t cap) {
  if (r < 1 || s < 1 || r + s > n) throw Error(ErrorCode::InvalidParameters, "need r, s >= 1 and r + s <= n");
  const BigInt count = r == s ? binomial(n, r) * binomial(n - r, s) / 2 : binomial(n, r) * binomial(n - r, s);
  if (count > cap) {
    throw Error(ErrorCode::FamilyTooLarge,
                count.str() + " (R,S) sets for n=" + std::to_string(n) + ", r=" + std::to_string(r) +
                    ", s=" + std::to_string(s) + " exceed the cap of " + std::to_string(cap));
  }
  WinningSetFamily f;
  f.universe_size = edge_count(n);
  f.sets.reserve(static_cast<std::size_t>(count));
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  for_each_subset(all, r, [&](const std::vector<int>& R) {
    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
      if (!std::binary_search(R.begin(), R.end(), v)) rest.push_back(v);
    for_each_subset(rest, s, [&](const std::vector<int>& S) {
      if (r == s && S.front() < R.front()) return;
      std::vector<Position> set;
      set.reserve(static_cast<std::size_t>(r * s));
      for (int x : R)
        for (int y : S) set.push_back(edge_index(n, Edge(x, y)));
      std::sort(set.begin(), set.end());
      f.sets.push_back(std::move(set));
    });
  });
  return f;
}

void ExpMaker::prepare(const GameState& state) {
  if (!potential_) {
    auto fam = std::make_shared<const WinningSetFamily>(exp_family(state.n(), r_, s_, cap_));
    const double vb = virtual_b_ > 0 ? virtual_b_ : state.b();
    potential_ = std::make_shared<EsbPotential>(fam, vb, state.a(), Owner::Breaker);
  } else if (potential_.use_count() > 1) {
    potential_ = std::make_shared<EsbPotential>(*potential_);
  }
  potential_->sync(state.board());
}

std::vector<Position> ExpMaker::select_count(const GameState& state, std::size_t count) {
  prepare(state);
  auto picks = potential_->take(count);
  for (Position p = 0; p < state.edge_total() && picks.size() < count; ++p) {
    if (state.owner(p) == Owner::Unclaimed && std::find(picks.begin(), picks.end(), p) == picks.end()) {
      picks.push_back(p);
    }
  }
  return picks;
}

std::vector<Position> ExpMaker::select(const GameState& state) {
  return select_count(state, state.claims_due());
}

std::vector<Position> exp_maker_select(const GameState& state, const ExpansionParams& params, double virtual_b) {
  ExpMaker m(params.r, params.s, virtual_b);
  return m.select(state);
}

}  // namespace mbg
