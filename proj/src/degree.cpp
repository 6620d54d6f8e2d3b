#include "mbg/degree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mbg/errors.hpp"

namespace mbg {

nlohmann::json MinDegParams::to_json() const {
  return {{"n", n},
          {"a", a},
          {"b", b},
          {"k", k},
          {"lambda1", lambda1},
          {"lambda2", lambda2},
          {"d_max", d_max},
          {"t0", t0},
          {"nonvacuous", nonvacuous},
          {"bias_ok", bias_ok},
          {"lambda_ok", lambda_ok},
          {"eq2_ok", eq2_ok},
          {"start_ok", start_ok},
          {"play_lambda1", play_lambda1},
          {"play_lambda2", play_lambda2},
          {"guaranteed", guaranteed()}};
}

MinDegParams mindeg_params(int n, double a, double b) {
  if (n < 3 || a < 1 || b < 1) throw Error(ErrorCode::InvalidParameters, "degree game needs n >= 3 and a, b >= 1");
  MinDegParams p;
  p.n = n;
  p.a = a;
  p.b = b;
  const double ln = std::log(static_cast<double>(n));
  p.k = 6 * a * b / std::pow(a + b, 1.5) * std::sqrt(n * ln);
  p.lambda2 = std::sqrt((a + b) * ln / (a * (a + 1) * n));
  p.lambda1 = std::pow(1 + a * p.lambda2, 1 / b) - 1;
  p.d_max = a * n / (a + b) - p.k;
  p.nonvacuous = p.d_max > 0;
  p.bias_ok = a <= n / (4 * ln);
  p.lambda_ok = p.lambda2 > 0 && p.lambda2 < 1;
  p.eq2_ok = std::pow(1 + p.lambda1, b) <= (1 + a * p.lambda2) * (1 + 1e-9);
  p.play_lambda2 = p.lambda_ok ? p.lambda2 : 0.5;
  p.play_lambda1 = std::pow(1 + a * p.play_lambda2, 1 / b) - 1;
  const double up = std::log1p(p.play_lambda1), down = std::log1p(-p.play_lambda2);
  p.t0 = n * std::exp(-up * (b * n / (a + b) + p.k) - down * (a * n / (a + b) - p.k));
  p.start_ok = p.lambda_ok && p.t0 < 1;
  return p;
}

DegreeWeights::DegreeWeights(const MinDegParams& params, Player me)
    : params_(params),
      me_(me),
      ln_up_(std::log1p(params.play_lambda1)),
      ln_down_(std::log1p(-params.play_lambda2)),
      y0_(params.b * params.n / (params.a + params.b) + params.k),
      x0_(params.a * params.n / (params.a + params.b) - params.k),
      x_(static_cast<std::size_t>(params.n)),
      y_(static_cast<std::size_t>(params.n)) {}

void DegreeWeights::refresh(const GameState& state) {
  for (Vertex v = 0; v < state.n(); ++v) {
    x_[static_cast<std::size_t>(v)] = state.degree(me_, v);
    y_[static_cast<std::size_t>(v)] = state.degree(opponent(me_), v);
  }
}

void DegreeWeights::claim(Vertex u, Vertex v, Player who) {
  auto& c = who == me_ ? x_ : y_;
  ++c[static_cast<std::size_t>(u)];
  ++c[static_cast<std::size_t>(v)];
}

double DegreeWeights::log_weight(Vertex v) const {
  const auto i = static_cast<std::size_t>(v);
  return ln_up_ * (y_[i] - y0_) + ln_down_ * (x_[i] - x0_);
}

double DegreeWeights::log_potential() const {
  double top = -INFINITY;
  for (int v = 0; v < params_.n; ++v) top = std::max(top, log_weight(v));
  long double sum = 0;
  for (int v = 0; v < params_.n; ++v) sum += std::exp(static_cast<long double>(log_weight(v) - top));
  return top + static_cast<double>(std::log(sum));
}

double mindeg_potential(const GameState& state, const MinDegParams& params, Player me) {
  if (params.n == 0) return 0.0;
  DegreeWeights w(params, me);
  w.refresh(state);
  return std::exp(w.log_potential());
}

std::vector<Position> mindeg_select(const GameState& state, DegreeWeights& weights, std::size_t count) {
  return mindeg_select(state, weights, count, weights.me());
}

std::vector<Position> mindeg_select(const GameState& state, DegreeWeights& weights, std::size_t count,
                                    Player claimer) {
  return mindeg_select(state, weights, count, claimer, {});
}

std::vector<Position> mindeg_select(const GameState& state, DegreeWeights& weights, std::size_t count,
                                    Player claimer, std::vector<Position> picks) {
  const int n = state.n();
  const std::size_t skip = picks.size();
  count += skip;
  std::vector<double> W(static_cast<std::size_t>(n));
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::vector<bool> picked(state.edge_total(), false);
  std::vector<int> free_left(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) free_left[static_cast<std::size_t>(v)] = state.free_degree(v);
  auto take = [&](Position p) {
    picked[p] = true;
    const Edge e = state.edge(p);
    --free_left[static_cast<std::size_t>(e.u)];
    --free_left[static_cast<std::size_t>(e.v)];
  };
  for (Position p : picks) take(p);
  auto open = [&](Vertex u, Vertex v) {
    const Position p = state.index(u, v);
    return state.owner(p) == Owner::Unclaimed && !picked[p];
  };
  constexpr double tol = 1e-12;
  // weights relative to the heaviest vertex at entry; only the two endpoints
  // of each pick move afterwards
  double top = -INFINITY;
  for (Vertex v = 0; v < n; ++v) top = std::max(top, weights.log_weight(v));
  for (Vertex v = 0; v < n; ++v) W[static_cast<std::size_t>(v)] = std::exp(weights.log_weight(v) - top);
  auto heavier = [&](Vertex x, Vertex y) {
    const double wx = W[static_cast<std::size_t>(x)], wy = W[static_cast<std::size_t>(y)];
    return wx != wy ? wx > wy : x < y;
  };
  // late in the game a plain scan of the free edges is cheaper
  if (state.unclaimed_count() <= static_cast<std::size_t>(n) * static_cast<std::size_t>(n) / 32) {
    std::vector<Position> free;
    for (Position p = 0; p < state.edge_total(); ++p) {
      if (state.owner(p) == Owner::Unclaimed && !picked[p]) free.push_back(p);
    }
    while (picks.size() < count) {
      bool found = false;
      double best = 0;
      Position arg = 0;
      for (Position p : free) {
        if (picked[p]) continue;
        const Edge e = state.edge(p);
        const double s = W[static_cast<std::size_t>(e.u)] + W[static_cast<std::size_t>(e.v)];
        if (!found || s > best * (1 + tol)) {
          found = true;
          best = s;
          arg = p;
        }
      }
      if (!found) break;
      picks.push_back(arg);
      take(arg);
      const Edge e = state.edge(arg);
      weights.claim(e.u, e.v, claimer);
      for (Vertex x : {e.u, e.v}) W[static_cast<std::size_t>(x)] = std::exp(weights.log_weight(x) - top);
    }
    picks.erase(picks.begin(), picks.begin() + static_cast<std::ptrdiff_t>(skip));
    return picks;
  }
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), heavier);
  while (picks.size() < count) {
    bool found = false;
    double best = 0;
    Edge arg;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Vertex u = order[i];
      const double wu = W[static_cast<std::size_t>(u)];
      const Vertex lead = order[0] == u ? order[1] : order[0];
      if (found && wu + W[static_cast<std::size_t>(lead)] < best * (1 - tol)) break;
      if (free_left[static_cast<std::size_t>(u)] == 0) continue;
      for (Vertex v : order) {
        const double s = wu + W[static_cast<std::size_t>(v)];
        if (found && s < best * (1 - tol)) break;
        if (v == u || free_left[static_cast<std::size_t>(v)] == 0 || !open(u, v)) continue;
        const Edge e(u, v);
        if (!found || s > best * (1 + tol) || (s >= best * (1 - tol) && e < arg)) {
          found = true;
          best = std::max(best, s);
          arg = e;
        }
        break;
      }
    }
    if (!found) break;
    picks.push_back(state.index(arg));
    take(picks.back());
    weights.claim(arg.u, arg.v, claimer);
    for (Vertex x : {arg.u, arg.v}) {
      order.erase(std::find(order.begin(), order.end(), x));
      W[static_cast<std::size_t>(x)] = std::exp(weights.log_weight(x) - top);
      order.insert(std::lower_bound(order.begin(), order.end(), x, heavier), x);
    }
  }
  picks.erase(picks.begin(), picks.begin() + static_cast<std::ptrdiff_t>(skip));
  return picks;
}

std::vector<Position> MinDegMaker::select(const GameState& state) {
  const Player me = state.to_move();
  if (!started_) {
    started_ = true;
    if (!fixed_) params_ = mindeg_params(state.n(), state.bias(me), state.bias(opponent(me)));
    note("mindeg", params_.to_json());
    if (!params_.lambda_ok) flag("mindeg-lambda-clamped", {{"lambda2", params_.lambda2}});
    if (!params_.guaranteed()) flag("mindeg-unguaranteed");
  }
  DegreeWeights w(params_, me);
  w.refresh(state);
  if (invariant_checks()) {
    const double lp = w.log_potential();
    if (!history_.empty() && lp > history_.back() + std::log1p(1e-9)) {
      violation("mindeg-potential", {{"before", history_.back()}, {"after", lp}});
    }
    history_.push_back(lp);
  }
  auto picks = mindeg_select(state, w, state.claims_due());
  return picks;
}

std::vector<Position> mindeg_breaker_select(const GameState& state, Vertex target) {
  const std::size_t due = state.claims_due();
  std::vector<Position> picks;
  for (Vertex w = 0; w < state.n() && picks.size() < due; ++w) {
    if (w != target && state.is_unclaimed(target, w)) picks.push_back(state.index(target, w));
  }
  for (Position p = 0; p < state.edge_total() && picks.size() < due; ++p) {
    if (state.owner(p) == Owner::Unclaimed && std::find(picks.begin(), picks.end(), p) == picks.end()) {
      picks.push_back(p);
    }
  }
  std::sort(picks.begin(), picks.end());
  return picks;
}

std::vector<Position> FloodingBreaker::select(const GameState& state) {
  if (target_ < 0) {
    for (Vertex v = 0; v < state.n(); ++v) {
      if (state.degree(Player::Maker, v) == 0) {
        target_ = v;
        break;
      }
    }
    if (target_ < 0) throw Error(ErrorCode::StrategyInapplicable, "every vertex already has a Maker edge");
    note("flood-target", {{"vertex", target_}});
  }
  return mindeg_breaker_select(state, target_);
}

std::vector<Position> DegreeAdversary::select(const GameState& state) {
  const auto params = mindeg_params(state.n(), state.a(), state.b());
  DegreeWeights w(params, Player::Maker);
  w.refresh(state);
  return mindeg_select(state, w, state.claims_due(), Player::Breaker);
}

std::vector<Position> D2SimpleMaker::select(const GameState& state) {
  if (!started_) {
    started_ = true;
    const int n = state.n();
    note("d2-simple", {{"target_degree", target_degree(n)}});
    if (state.b() >= state.a()) flag("d2-simple-bias", {{"a", state.a()}, {"b", state.b()}});
    if (state.a() > std::cbrt(n / (72 * std::log(static_cast<double>(n))))) flag("d2-simple-bound");
    inner_.set_invariant_checks(invariant_checks());
  }
  auto picks = inner_.select(state);
  for (auto& a : inner_.take_notes()) note(std::move(a.label), std::move(a.data));
  return picks;
}

}  // namespace mbg
