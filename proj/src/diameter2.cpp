#include "mbg/diameter2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mbg/box.hpp"
#include "mbg/errors.hpp"

namespace mbg {

namespace {

std::vector<Position>& fill_lowest(const GameState& state, std::vector<Position>& picks, std::size_t due) {
  for (Position p = 0; p < state.edge_total() && picks.size() < due; ++p) {
    if (state.owner(p) == Owner::Unclaimed && std::find(picks.begin(), picks.end(), p) == picks.end()) {
      picks.push_back(p);
    }
  }
  return picks;
}

const Move* last_move(const GameState& state, Player who) {
  const auto& log = state.log();
  for (auto it = log.rbegin(); it != log.rend(); ++it) {
    if (it->player == who) return &*it;
  }
  return nullptr;
}

}  // namespace

// pairing ---------------------------------------------------------------------

std::vector<Position> pairing_breaker_select(const GameState& state, Edge& pair) {
  const int n = state.n();
  if (n < 4) throw Error(ErrorCode::StrategyInapplicable, "pairing needs n >= 4");
  const std::size_t due = state.claims_due();
  std::vector<Position> picks;
  if (pair.u < 0) {
    const Move* first = nullptr;
    for (const auto& m : state.log()) {
      if (m.player == Player::Maker) {
        first = &m;
        break;
      }
    }
    std::vector<bool> touched(static_cast<std::size_t>(n), false);
    if (first) {
      for (Position p : first->positions) {
        const Edge e = state.edge(p);
        touched[e.u] = touched[e.v] = true;
      }
    }
    for (Position p = 0; p < state.edge_total(); ++p) {
      const Edge e = state.edge(p);
      if (state.owner(p) == Owner::Unclaimed && !touched[e.u] && !touched[e.v]) {
        pair = e;
        picks.push_back(p);
        break;
      }
    }
    if (picks.empty()) throw Error(ErrorCode::StrategyInapplicable, "no free edge avoids Maker's first edge");
    return fill_lowest(state, picks, due);
  }
  if (const Move* m = last_move(state, Player::Maker)) {
    for (Position p : m->positions) {
      const Edge e = state.edge(p);
      Vertex w = -1, other = -1;
      if (e.u == pair.u || e.v == pair.u) {
        w = e.u == pair.u ? e.v : e.u;
        other = pair.v;
      } else if (e.u == pair.v || e.v == pair.v) {
        w = e.u == pair.v ? e.v : e.u;
        other = pair.u;
      }
      if (w < 0 || w == other) continue;
      const Position q = state.index(w, other);
      if (state.owner(q) == Owner::Unclaimed && picks.size() < due) picks.push_back(q);
    }
  }
  return fill_lowest(state, picks, due);
}

std::vector<Position> PairingBreaker::select(const GameState& state) {
  const bool first = pair_.u < 0;
  auto picks = pairing_breaker_select(state, pair_);
  if (first) note("pairing-pair", {{"u", pair_.u}, {"v", pair_.v}});
  return picks;
}

std::string PairingBreaker::state_key() const {
  return std::to_string(pair_.u) + "," + std::to_string(pair_.v);
}

// Breaker ---------------------------------------------------------------------

nlohmann::json D2BreakerParams::to_json() const {
  return {{"n", n},
          {"epsilon", epsilon},
          {"b", b},
          {"r_prime_max", r_prime_max},
          {"t_worst", t_worst},
          {"box_rhs", box_rhs},
          {"box_ok", box_ok}};
}

D2BreakerParams d2_breaker_params(int n, double epsilon) {
  if (n < 8 || !(epsilon > 0)) throw Error(ErrorCode::InvalidParameters, "need n >= 8 and epsilon > 0");
  D2BreakerParams p;
  p.n = n;
  p.epsilon = epsilon;
  p.b = static_cast<int>(std::ceil((2 + epsilon) * std::sqrt(n / std::log(static_cast<double>(n)))));
  p.r_prime_max = (n - 1 + p.b - 1) / p.b;
  p.t_worst = 2 * p.r_prime_max + 2;
  const int rest = n - p.t_worst - 1 - p.r_prime_max;
  p.box_rhs = rest > 0 ? (p.b - 1) / 2.0 * std::log(static_cast<double>(rest))
                       : -std::numeric_limits<double>::infinity();
  p.box_ok = p.t_worst <= p.box_rhs;
  return p;
}

void D2Breaker::start_phase_two(const GameState& state) {
  phase_two_ = true;
  spokes_.clear();
  for (Vertex w = 0; w < state.n(); ++w) {
    if (w != v_ && state.owner(v_, w) == Owner::Maker) spokes_.push_back(w);
  }
  std::vector<bool> spoke(static_cast<std::size_t>(state.n()), false);
  for (Vertex u : spokes_) spoke[u] = true;
  boxes_.clear();
  for (Vertex x = 0; x < state.n(); ++x) {
    if (x == v_ || spoke[x] || state.owner(x, v_) == Owner::Maker) continue;
    std::vector<Position> box;
    bool ok = true;
    for (Vertex u : spokes_) {
      const Position p = state.index(x, u);
      if (state.owner(p) == Owner::Maker) {
        ok = false;
        break;
      }
      box.push_back(p);
    }
    if (ok) boxes_.push_back(std::move(box));
  }
  const int t = static_cast<int>(spokes_.size());
  const int a = state.a();
  note("d2-breaker-phase2", {{"t", t}, {"r_prime", rounds_one_}, {"boxes", boxes_.size()}});
  if (invariant_checks() && t > a * (rounds_one_ + 1)) {
    violation("d2-breaker-spokes", {{"t", t}, {"bound", a * (rounds_one_ + 1)}});
  }
  if (t > 0 && !boxes_.empty()) {
    const bool ok = a <= 2 && state.b() >= 2 &&
                    box_game_condition(t, static_cast<int>(boxes_.size()), state.b(), a);
    if (!ok) flag("d2-breaker-box-condition", {{"t", t}, {"boxes", boxes_.size()}});
  }
}

std::vector<Position> D2Breaker::select(const GameState& state) {
  const std::size_t due = state.claims_due();
  if (v_ < 0) {
    for (Vertex w = 0; w < state.n(); ++w) {
      if (state.degree(Player::Maker, w) == 0) {
        v_ = w;
        break;
      }
    }
    if (v_ < 0) throw Error(ErrorCode::StrategyInapplicable, "every vertex already has a Maker edge");
    note("d2-breaker-center", {{"vertex", v_}});
    if (state.a() != 2) flag("d2-breaker-bias", {{"a", state.a()}});
  }
  std::vector<Position> picks;
  if (!phase_two_) {
    ++rounds_one_;
    int open = 0;
    for (Vertex w = 0; w < state.n(); ++w) {
      if (w == v_ || !state.is_unclaimed(v_, w)) continue;
      ++open;
      if (picks.size() < due) picks.push_back(state.index(v_, w));
    }
    if (static_cast<std::size_t>(open) > picks.size()) return picks;
    start_phase_two(state);
  } else if (invariant_checks() && state.free_degree(v_) > 0) {
    violation("d2-breaker-center-open", {{"free", state.free_degree(v_)}});
  }
  auto owner = [&](Position p) {
    if (std::find(picks.begin(), picks.end(), p) != picks.end()) return Owner::Breaker;
    return state.owner(p);
  };
  auto more = box_select(boxes_, owner, Owner::Breaker, due - picks.size(), BoxPolicy::FinishOrBalance);
  picks.insert(picks.end(), more.begin(), more.end());
  return fill_lowest(state, picks, due);
}

std::string D2Breaker::state_key() const {
  std::string key = std::to_string(v_) + (phase_two_ ? "|2|" : "|1|") + std::to_string(rounds_one_);
  for (Vertex u : spokes_) key += "," + std::to_string(u);
  return key;
}

// Maker parameters ------------------------------------------------------------

nlohmann::json D2MakerParams::to_json() const {
  return {{"n", n},       {"b", b},          {"c", c},          {"r", r},
          {"s", s},       {"ell_max", ell_max}, {"lambda4", lambda4},
          {"conds",
           {{"cond1", cond1},
            {"cond2", cond2},
            {"cond3c", cond3c},
            {"cond3a", cond3a},
            {"cond3b", cond3b},
            {"cond4a", cond4a},
            {"cond4b", cond4b},
            {"cond5", cond5}}}};
}

double game4_lambda(double b, double ell) {
  const double q = 16 * b * ell;
  return 1 / q - (4 * b + 1) / (q * q);
}

D2MakerParams d2_maker_params(double n) {
  if (!(n >= 16)) throw Error(ErrorCode::InvalidParameters, "need n >= 16");
  D2MakerParams p;
  p.n = n;
  const double ln = std::log(n);
  p.b = std::pow(n, 0.125) / (9 * std::pow(ln, 0.375));
  p.c = 0.125;
  p.r = std::sqrt(n * ln / 2);
  p.s = std::pow(n, 0.75) / ln;
  const double b = p.b, r = p.r, s = p.s, c = p.c;
  p.ell_max = std::ceil(32 * r * b * b);
  p.lambda4 = game4_lambda(b, p.ell_max);
  p.cond1 = c >= 36 * std::pow(b, 1.5) * std::sqrt(ln / n);
  p.cond2 = n >= 4 * b * r;
  p.cond3c = (n - 1) / (4 * r) - 2 >= 4 * b;
  p.cond3a = s >= r && r >= 3;
  p.cond3b = ln < 2 * r * r * std::log(3.0) / n;
  p.cond4a = 4 * b < c * n / b;
  p.cond4b = std::log(32 * r * b * b) - 3 * n / (32768 * r * std::pow(b, 4)) + 3.0 / 64 < 0;
  p.cond5 = std::log(n * s / 2) - n / (32 * b * b * s) * std::log(2.0) < 0;
  return p;
}

double d2_maker_threshold() {
  for (int e = 1; e <= 40; ++e) {
    const double n = std::pow(10.0, e);
    if (n >= 16 && d2_maker_params(n).all()) return n;
  }
  return 0;
}

// Maker strategy --------------------------------------------------------------

namespace {

/// Ownership with this turn's picks counted as Maker's.
struct View {
  const GameState& state;
  const std::vector<Position>& picks;

  Owner owner(Vertex u, Vertex v) const {
    const Position p = state.index(u, v);
    if (std::find(picks.begin(), picks.end(), p) != picks.end()) return Owner::Maker;
    return state.owner(p);
  }
  bool joined(Vertex x, Vertex y) const {
    if (owner(x, y) == Owner::Maker) return true;
    for (Vertex z = 0; z < state.n(); ++z) {
      if (z != x && z != y && owner(x, z) == Owner::Maker && owner(z, y) == Owner::Maker) return true;
    }
    return false;
  }
  bool open(Vertex x, Vertex y, Vertex mid) const {
    return owner(x, mid) != Owner::Breaker && owner(mid, y) != Owner::Breaker;
  }
};

int open_paths(const View& view, Vertex x, Vertex y, const std::vector<Vertex>& mids) {
  int count = 0;
  for (Vertex m : mids) count += view.open(x, y, m) ? 1 : 0;
  return count;
}

/// Claims the open path through the frozen set needing the fewest new edges.
bool connect(const View& view, Vertex x, Vertex y, const std::vector<Vertex>& mids, std::vector<Position>& picks,
             std::size_t due) {
  Vertex best = -1;
  int need = 3;
  for (Vertex m : mids) {
    if (!view.open(x, y, m)) continue;
    const int k = (view.owner(x, m) == Owner::Unclaimed) + (view.owner(m, y) == Owner::Unclaimed);
    if (k < need) {
      need = k;
      best = m;
    }
  }
  if (best < 0 || picks.size() + static_cast<std::size_t>(need) > due) return false;
  const auto& st = view.state;
  if (view.owner(x, best) == Owner::Unclaimed) picks.push_back(st.index(x, best));
  if (view.owner(best, y) == Owner::Unclaimed) picks.push_back(st.index(best, y));
  return true;
}

}  // namespace

void D2Maker::start(const GameState& state) {
  started_ = true;
  const int n = state.n();
  if (state.a() != 2) throw Error(ErrorCode::StrategyInapplicable, "the composite Maker needs bias 2");
  if (n < 16) throw Error(ErrorCode::StrategyInapplicable, "the composite Maker needs n >= 16");
  const double b = state.b();
  params_ = d2_maker_params(n);
  note("d2-maker-params", params_.to_json());
  if (!params_.all()) flag("d2-maker-unguaranteed");

  threshold_ = static_cast<int>(std::ceil(params_.c * n / b - 1e-12));
  const auto total_rounds = static_cast<int>((state.edge_total() + 1 + state.b()) / (2 + state.b()));
  const int literal = static_cast<int>(std::ceil(2 * n * params_.r));
  phase_one_ = std::min(literal, total_rounds / 2) / 4 * 4;
  if (phase_one_ < literal) flag("d2-phase1-truncated", {{"literal", literal}, {"used", phase_one_}});

  const double ell = std::ceil(32 * params_.r * b * b);
  lambda_ = game4_lambda(b, ell);

  game1_ = mindeg_params(n, 2, 4 * b);

  // Game 3: largest r*s whose family fits the cap
  r3_ = s3_ = 0;
  for (int r = 1; 2 * r <= n; ++r) {
    for (int s = r; r + s <= n; ++s) {
      BigInt size = binomial(n, r) * binomial(n - r, s);
      if (r == s) size /= 2;
      if (size > BigInt(options_.game3_cap)) break;
      if (r * s > r3_ * s3_ || (r * s == r3_ * s3_ && r > r3_)) {
        r3_ = r;
        s3_ = s;
      }
    }
  }
  virtual_b_ = std::max(4 * b, std::floor((n - 1) / (4 * params_.r)) - 2);
  game3_.emplace(r3_, s3_, virtual_b_, options_.game3_cap);
  note("d2-maker-setup", {{"high_threshold", threshold_},
                          {"phase_one", phase_one_},
                          {"lambda", lambda_},
                          {"game3_r", r3_},
                          {"game3_s", s3_},
                          {"game3_virtual_b", virtual_b_}});
  is_high_.assign(static_cast<std::size_t>(n), false);
}

void D2Maker::detect_high(const GameState& state) {
  const std::vector<Position> none;
  const View view{state, none};
  for (Vertex x = 0; x < state.n(); ++x) {
    if (is_high_[x] || state.degree(Player::Breaker, x) < threshold_) continue;
    is_high_[x] = true;
    for (Vertex xj : high_) {
      Pair pr{xj, x, {}};
      for (Vertex m = 0; m < state.n(); ++m) {
        if (m != xj && m != x && view.open(xj, x, m)) pr.mids.push_back(m);
      }
      pairs4_.push_back(std::move(pr));
    }
    high_.push_back(x);
    note("high", {{"vertex", x}, {"index", high_.size()}, {"breaker_degree", state.degree(Player::Breaker, x)}});
  }
  if (invariant_checks()) {
    const auto breaker_edges = static_cast<long long>(state.turns_taken(Player::Breaker)) * state.b();
    const long long bound = 2 * breaker_edges / std::max(threshold_, 1);
    if (static_cast<long long>(high_.size()) > bound) {
      violation("d2-high-bound", {{"high", high_.size()}, {"bound", bound}});
    }
  }
}

double D2Maker::game4_potential(const GameState& state) const {
  const std::vector<Position> none;
  const View view{state, none};
  double t = 0;
  for (const auto& pr : pairs4_) {
    if (view.joined(pr.x, pr.y)) continue;
    t += std::pow(1 + lambda_, -open_paths(view, pr.x, pr.y, pr.mids));
  }
  return t;
}

void D2Maker::game1(const GameState& state, std::vector<Position>& picks) {
  DegreeWeights w(game1_, Player::Maker);
  w.refresh(state);
  auto more = mindeg_select(state, w, state.claims_due() - picks.size());
  picks.insert(picks.end(), more.begin(), more.end());
}

void D2Maker::game2(const GameState& state, std::vector<Position>& picks) {
  const int n = state.n();
  const View view{state, picks};
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (Vertex x = 0; x < n; ++x) deg[x] = state.degree(Player::Maker, x);
  for (Position p : picks) {
    const Edge e = state.edge(p);
    ++deg[e.u];
    ++deg[e.v];
  }
  while (picks.size() < state.claims_due()) {
    Vertex poor = -1;
    for (Vertex x = 0; x < n; ++x) {
      bool has_free = false;
      for (Vertex y = 0; y < n && !has_free; ++y) has_free = y != x && view.owner(x, y) == Owner::Unclaimed;
      if (has_free && (poor < 0 || deg[x] < deg[poor])) poor = x;
    }
    if (poor < 0) return;
    Vertex partner = -1;
    for (Vertex y = 0; y < n; ++y) {
      if (y == poor || view.owner(poor, y) != Owner::Unclaimed) continue;
      if (partner < 0 || deg[y] < deg[partner]) partner = y;
    }
    picks.push_back(state.index(poor, partner));
    ++deg[poor];
    ++deg[partner];
  }
}

void D2Maker::game3(const GameState& state, std::vector<Position>& picks) {
  auto more = game3_->select_count(state, state.claims_due() - picks.size());
  picks.insert(picks.end(), more.begin(), more.end());
}

void D2Maker::game4(const GameState& state, std::vector<Position>& picks) {
  const double t = game4_potential(state);
  if (!t_history_.empty() && invariant_checks() && high_.size() == high_at_last_step_ &&
      t > t_history_.back() * (1 + 1e-9)) {
    violation("d2-game4-potential", {{"before", t_history_.back()}, {"after", t}});
  }
  t_history_.push_back(t);
  high_at_last_step_ = high_.size();

  const View view{state, picks};
  while (picks.size() < state.claims_due()) {
    const Pair* target = nullptr;
    int best_y = 0;
    for (const auto& pr : pairs4_) {
      if (view.joined(pr.x, pr.y)) continue;
      const int y = open_paths(view, pr.x, pr.y, pr.mids);
      if (y > 0 && (!target || y < best_y)) {
        target = &pr;
        best_y = y;
      }
    }
    if (!target || !connect(view, target->x, target->y, target->mids, picks, state.claims_due())) return;
  }
}

void D2Maker::freeze_phase_two(const GameState& state) {
  frozen_two_ = true;
  const int n = state.n();
  const std::vector<Position> none;
  const View view{state, none};
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex w = u + 1; w < n; ++w) {
      if ((is_high_[u] && is_high_[w]) || view.joined(u, w)) continue;
      Pair pr{u, w, {}};
      for (Vertex m = 0; m < n; ++m) {
        if (m != u && m != w && view.open(u, w, m)) pr.mids.push_back(m);
      }
      pairs2_.push_back(std::move(pr));
    }
  }
  note("d2-phase2", {{"pairs", pairs2_.size()}, {"high", high_.size()}});
}

void D2Maker::phase_two(const GameState& state, std::vector<Position>& picks) {
  const View view{state, picks};
  while (picks.size() < state.claims_due()) {
    const Pair* target = nullptr;
    const Pair* stuck = nullptr;
    int best_y = 0;
    for (const auto& pr : pairs2_) {
      if (view.joined(pr.x, pr.y)) continue;
      const int y = open_paths(view, pr.x, pr.y, pr.mids);
      if (y == 0) {
        if (!stuck && view.owner(pr.x, pr.y) == Owner::Unclaimed) stuck = &pr;
      } else if (!target || y < best_y) {
        target = &pr;
        best_y = y;
      }
    }
    if (target && (is_high_[target->x] && is_high_[target->y]) && invariant_checks()) {
      violation("d2-phase2-eligibility", {{"u", target->x}, {"w", target->y}});
    }
    if (target && connect(view, target->x, target->y, target->mids, picks, state.claims_due())) continue;
    if (!stuck) return;
    picks.push_back(state.index(stuck->x, stuck->y));
  }
}

std::vector<Position> D2Maker::select(const GameState& state) {
  if (!started_) start(state);
  const int round = state.turns_taken(Player::Maker) + 1;
  const std::size_t due = state.claims_due();
  std::vector<Position> picks;
  if (round <= phase_one_ + 1) detect_high(state);
  if (round <= phase_one_) {
    const int game = (round - 1) % 4 + 1;
    note("subgame", {{"phase", 1}, {"game", game}});
    switch (game) {
      case 1: game1(state, picks); break;
      case 2: game2(state, picks); break;
      case 3: game3(state, picks); break;
      default: game4(state, picks); break;
    }
  } else {
    if (!frozen_two_) freeze_phase_two(state);
    const int q = round - phase_one_;
    if (q % 2 == 1) {
      note("subgame", {{"phase", 2}, {"game", "connect"}});
      phase_two(state, picks);
    } else if (q % 4 == 0) {
      note("subgame", {{"phase", 2}, {"game", 4}});
      game4(state, picks);
    } else {
      note("subgame", {{"phase", 2}, {"game", "free"}});
    }
  }
  return fill_lowest(state, picks, due);
}

}  // namespace mbg
