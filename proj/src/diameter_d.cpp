#include "mbg/diameter_d.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mbg/errors.hpp"

namespace mbg {

// parameters --------------------------------------------------------------------

bool DdParams::claim1_ok() const {
  for (int i = 1; i < half; ++i) {
    if (!claim1_lower[i] || !claim1_upper[i]) return false;
  }
  return true;
}

nlohmann::json DdParams::to_json() const {
  nlohmann::json lower = nlohmann::json::array(), upper = nlohmann::json::array();
  for (int i = 1; i < half; ++i) {
    lower.push_back(static_cast<bool>(claim1_lower[i]));
    upper.push_back(static_cast<bool>(claim1_upper[i]));
  }
  return {{"n", n},
          {"d", d},
          {"half", half},
          {"beta", beta},
          {"b", b},
          {"r1_constant", r1_constant},
          {"r", r},
          {"claim1_lower", lower},
          {"claim1_upper", upper},
          {"nontrivial", nontrivial},
          {"theorem_bound", theorem_bound},
          {"d_small", d_small}};
}

double dd_next_r(const DdParams& p, int i) {
  const double ln = std::log(p.n), ln2 = std::log(2.0);
  double sum = 0;
  for (int j = 0; j < i; ++j) sum += p.r[j];
  const double prev = p.r[i - 1];
  return p.n * prev * ln2 / (p.half * p.b * ln + prev * ln2) - sum;
}

DdParams dd_params(double n, int d, double r1_constant) {
  if (d < 3 || !(n >= 16)) throw Error(ErrorCode::InvalidParameters, "need d >= 3 and n >= 16");
  DdParams p;
  p.n = n;
  p.d = d;
  p.half = (d + 1) / 2;
  p.r1_constant = r1_constant;
  const double ln = std::log(n), ln2 = std::log(2.0);
  p.beta = std::pow(2 * n * ln2 / ln, 1.0 / p.half);
  p.b = n * ln2 / (p.half * ln) / p.beta;
  const double hb = p.half * p.b;
  p.r.assign(static_cast<std::size_t>(p.half), 0.0);
  p.r[0] = 1;
  if (p.half > 1) p.r[1] = n / hb * (1 - r1_constant * std::sqrt(hb * ln / n));
  for (int i = 2; i < p.half; ++i) p.r[i] = dd_next_r(p, i);
  p.claim1_lower.assign(static_cast<std::size_t>(p.half), true);
  p.claim1_upper.assign(static_cast<std::size_t>(p.half), true);
  const double shrink = 1 - 6 / std::sqrt(p.beta);
  for (int i = 1; i < p.half; ++i) {
    const double top = ln / ln2 * std::pow(p.beta, i);
    p.claim1_lower[i] = std::pow(shrink, i) * top <= p.r[i];
    p.claim1_upper[i] = p.r[i] <= top;
  }
  p.nontrivial = 2 * hb * ln < p.r[p.half - 1] * ln2;
  p.theorem_bound = p.b > 1 / (2.0 * d) * std::pow(n / ln, 1 - 1.0 / p.half);
  p.d_small = d <= ln / (3 * std::log(ln));
  return p;
}

// Claim 2 -------------------------------------------------------------------------

namespace {

BigInt power(int base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// m D^(m+1) - (m+1) D^m + 1
BigInt bracket(int delta, int m) {
  return BigInt(m) * power(delta, m + 1) - BigInt(m + 1) * power(delta, m) + 1;
}

}  // namespace

BigInt claim2_f(int delta, int m, int k) {
  if (delta < 2 || m < 2) throw Error(ErrorCode::InvalidParameters, "need delta >= 2 and m >= 2");
  if (k < 1 || k > m - 1) throw Error(ErrorCode::InvalidParameters, "k must lie in 1..m-1");
  return bracket(delta, m - k) + bracket(delta, k);
}

BigInt claim2_bound(int delta, int m) {
  if (delta < 2 || m < 2) throw Error(ErrorCode::InvalidParameters, "need delta >= 2 and m >= 2");
  return bracket(delta, m - 1) + BigInt(delta - 1) * (delta - 1);
}

bool claim2_check(std::pair<int, int> delta_range, std::pair<int, int> m_range) {
  for (int delta = delta_range.first; delta <= delta_range.second; ++delta) {
    for (int m = m_range.first; m <= m_range.second; ++m) {
      const BigInt bound = claim2_bound(delta, m);
      for (int k = 1; k < m; ++k) {
        if (claim2_f(delta, m, k) > bound) return false;
      }
    }
  }
  return true;
}

BlockBudget block_budget(int delta, int d) {
  if (delta < 2 || d < 1) throw Error(ErrorCode::InvalidParameters, "need delta >= 2 and d >= 1");
  const BigInt sq = BigInt(delta - 1) * (delta - 1);
  return BlockBudget{delta, d, (bracket(delta, d - 1) + sq) / sq};
}

// Maker -----------------------------------------------------------------------------

nlohmann::json DdPlan::to_json() const {
  nlohmann::json games = nlohmann::json::array();
  for (auto [r, s] : exp_games) games.push_back({r, s});
  return {{"d", d}, {"half", half}, {"effective_b", effective_b}, {"r1", r1}, {"exp_games", games}};
}

DdPlan dd_plan(int n, int d, double b, std::size_t cap) {
  const DdParams p = dd_params(n, d);
  DdPlan plan;
  plan.d = d;
  plan.half = p.half;
  plan.effective_b = p.half * b;
  plan.r1 = p.r[1];
  auto whole = [&](double x) { return std::max(1, static_cast<int>(std::floor(x))); };
  for (int k = 2; k < p.half; ++k) plan.exp_games.emplace_back(whole(p.r[k - 1]), n - whole(p.r[k]));
  const int last = whole(p.r[p.half - 1]);
  plan.exp_games.emplace_back(last, d % 2 == 0 ? (n + 1) / 2 - 1 : n - last);
  for (auto& [r, s] : plan.exp_games) {
    if (r + s > n || s < 1) {
      r = s = 0;
      continue;
    }
    BigInt size = binomial(n, r) * binomial(n - r, s);
    if (r == s) size /= 2;
    if (size > BigInt(cap)) {
      throw Error(ErrorCode::FamilyTooLarge, "EXP(" + std::to_string(r) + "," + std::to_string(s) + ") on K_" +
                                                 std::to_string(n) + " has " + size.str() + " sets");
    }
  }
  return plan;
}

std::vector<Position> DdMaker::select(const GameState& state) {
  if (!started_) {
    started_ = true;
    if (state.a() != 1) throw Error(ErrorCode::StrategyInapplicable, "the D_d Maker plays with bias 1");
    if (!plan_) plan_ = dd_plan(state.n(), d_, state.b());
    game1_ = mindeg_params(state.n(), 1, plan_->effective_b);
    for (auto [r, s] : plan_->exp_games) games_.emplace_back(r, s, plan_->effective_b);
    note("dd-plan", plan_->to_json());
  }
  const int round = state.turns_taken(Player::Maker) + 1;
  const int game = (round - 1) % plan_->half + 1;
  note("subgame", {{"game", game}});
  std::vector<Position> picks;
  if (game == 1) {
    DegreeWeights w(game1_, Player::Maker);
    w.refresh(state);
    picks = mindeg_select(state, w, state.claims_due());
  } else {
    auto [r, s] = plan_->exp_games[static_cast<std::size_t>(game - 2)];
    if (r > 0) picks = games_[static_cast<std::size_t>(game - 2)].select_count(state, state.claims_due());
  }
  for (Position p = 0; p < state.edge_total() && picks.size() < state.claims_due(); ++p) {
    if (state.owner(p) == Owner::Unclaimed && std::find(picks.begin(), picks.end(), p) == picks.end()) {
      picks.push_back(p);
    }
  }
  return picks;
}

// Breaker, a = 1 ----------------------------------------------------------------------

DdBreakerBias dd_breaker_bias(int n, int d, double multiplier) {
  if (d < 3 || n < 4) throw Error(ErrorCode::InvalidParameters, "need d >= 3 and n >= 4");
  const double base = std::pow(d, 1.0 / (d - 1)) * std::pow(n, 1 - 1.0 / (d - 1));
  DdBreakerBias out;
  out.b1 = static_cast<int>(std::ceil(base - 1e-9));
  out.b = static_cast<int>(std::ceil(multiplier * base - 1e-9));
  out.b2 = out.b - out.b1;
  return out;
}

namespace {

constexpr int kFar = 1 << 20;

std::vector<int> distances(const Graph& g, Vertex s) {
  const auto dist = distances_from(g, s);
  std::vector<int> out(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) out[i] = dist[i].is_finite() ? dist[i].value() : kFar;
  return out;
}

}  // namespace

std::vector<Edge> dd_blocking_demand(const Graph& maker, int d, Vertex u, Vertex v, Edge xy, int* case_id,
                                     int* i_out, int* j_out) {
  const auto du = distances(maker, u), dv = distances(maker, v);
  Vertex x = xy.u, y = xy.v;
  int which;
  if (du[x] <= du[y] && dv[y] <= dv[x]) {
    which = 1;
  } else if (du[y] <= du[x] && dv[x] <= dv[y]) {
    which = 1;
    std::swap(x, y);
  } else {
    which = 2;
    if (du[y] < du[x]) std::swap(x, y);
  }
  const int i = du[x];
  const int j = which == 1 ? dv[y] : dv[x];
  if (case_id) *case_id = which;
  if (i_out) *i_out = i;
  if (j_out) *j_out = j;

  // E(N_k(from), B_{top-k}(to)) for k = 0..top
  struct Rule {
    Vertex from;
    const std::vector<int>* to;
    int top;
  };
  std::vector<Rule> rules;
  const int slack = which == 1 ? 1 : 2;
  const Vertex source = which == 1 ? x : y;
  if (i <= d - slack) rules.push_back({source, &dv, d - i - slack});
  if (which == 1) {
    if (j <= d - 1) rules.push_back({y, &du, d - j - 1});
  } else if (j <= d - 2) {
    rules.push_back({y, &du, d - j - 2});
  }

  std::vector<std::vector<Vertex>> layers[2];
  int max_top = -1;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    layers[r] = bfs_layers(maker, rules[r].from, rules[r].top);
    max_top = std::max(max_top, rules[r].top);
  }
  std::vector<Edge> out;
  std::set<Edge> seen;
  const int n = maker.order();
  for (int k = 0; k <= max_top; ++k) {
    for (std::size_t r = 0; r < rules.size(); ++r) {
      if (k > rules[r].top || k >= static_cast<int>(layers[r].size())) continue;
      const int radius = rules[r].top - k;
      std::vector<Edge> block;
      for (Vertex a : layers[r][static_cast<std::size_t>(k)]) {
        for (Vertex c = 0; c < n; ++c) {
          if (c != a && (*rules[r].to)[c] <= radius) block.emplace_back(a, c);
        }
      }
      std::sort(block.begin(), block.end());
      for (const Edge& e : block) {
        if (seen.insert(e).second) out.push_back(e);
      }
    }
  }
  return out;
}

bool blocking_sound(const Graph& maker, int d, Vertex u, Vertex v) {
  const auto du = distances(maker, u), dv = distances(maker, v);
  for (const Edge& e : maker.edges()) {
    if (du[e.u] + dv[e.v] <= d - 1 || du[e.v] + dv[e.u] <= d - 1) return false;
  }
  return true;
}

std::vector<Position> DdBreakerA1::select(const GameState& state) {
  if (state.a() != 1) throw Error(ErrorCode::StrategyInapplicable, "this Breaker needs Maker bias 1");
  const int n = state.n();
  const std::size_t due = state.claims_due();
  const std::size_t b1 = std::min<std::size_t>(static_cast<std::size_t>(b1_), due);
  const std::size_t b2 = due - b1;
  std::vector<Position> picks;

  if (pair_.u < 0) {
    std::vector<bool> touched(static_cast<std::size_t>(n), false);
    for (const auto& m : state.log()) {
      if (m.player != Player::Maker) continue;
      for (Position p : m.positions) {
        touched[state.edge(p).u] = touched[state.edge(p).v] = true;
      }
    }
    for (Position p = 0; p < state.edge_total() && pair_.u < 0; ++p) {
      const Edge e = state.edge(p);
      if (state.owner(p) == Owner::Unclaimed && !touched[e.u] && !touched[e.v]) pair_ = e;
    }
    if (pair_.u < 0) throw Error(ErrorCode::StrategyInapplicable, "no free pair avoids Maker's edges");
    picks.push_back(state.index(pair_));
    note("dd-pair", {{"u", pair_.u}, {"v", pair_.v}});
  } else {
    const Graph& maker = state.maker_graph();
    if (invariant_checks() && !blocking_sound(maker, d_, pair_.u, pair_.v)) {
      violation("dd-blocking-soundness", {{"u", pair_.u}, {"v", pair_.v}});
    }
    const Move* last = nullptr;
    for (auto it = state.log().rbegin(); it != state.log().rend(); ++it) {
      if (it->player == Player::Maker) {
        last = &*it;
        break;
      }
    }
    if (last && !last->positions.empty()) {
      int which = 0, i = 0, j = 0;
      const auto demand =
          dd_blocking_demand(maker, d_, pair_.u, pair_.v, state.edge(last->positions.front()), &which, &i, &j);
      std::vector<Position> open;
      for (const Edge& e : demand) {
        if (state.owner(e) == Owner::Unclaimed) open.push_back(state.index(e));
      }
      int delta = 0;
      for (Vertex w = 0; w < n; ++w) delta = std::max(delta, state.degree(Player::Maker, w));
      if (open.size() > b2) {
        ++budget_flags_;
        flag("dd-budget-exceeded", {{"demand", open.size()}, {"b2", b2}});
      }
      if (delta >= 3 && BigInt(open.size()) > block_budget(delta, d_).budget) {
        ++delfinal_flags_;
        flag("dd-delfinal-exceeded", {{"demand", open.size()}, {"delta", delta}});
      }
      note("dd-block", {{"case", which}, {"i", i}, {"j", j}, {"demand", open.size()}, {"delta", delta}});
      for (std::size_t k = 0; k < open.size() && picks.size() < b2; ++k) picks.push_back(open[k]);
    }
  }

  MinDegParams params = mindeg_params(n, std::max<std::size_t>(b1, 1), 1);
  DegreeWeights w(params, Player::Breaker);
  w.refresh(state);
  for (Position p : picks) w.claim(state.edge(p).u, state.edge(p).v, Player::Breaker);
  auto more = mindeg_select(state, w, due - picks.size(), Player::Breaker, picks);
  picks.insert(picks.end(), more.begin(), more.end());
  return picks;
}

std::string DdBreakerA1::state_key() const { return std::to_string(pair_.u) + "," + std::to_string(pair_.v); }

// Breaker, a >= 2 ---------------------------------------------------------------------

int dd_breaker_a2_bias(int n, int d) {
  if (d < 3 || n < 4) throw Error(ErrorCode::InvalidParameters, "need d >= 3 and n >= 4");
  return static_cast<int>(std::ceil(4 * std::pow(n, 1 - 1.0 / d) - 1e-9));
}

std::vector<Position> DdBreakerA2::select(const GameState& state) {
  if (!started_) {
    started_ = true;
    params_ = mindeg_params(state.n(), state.b(), state.a());
    if (state.a() < 2) flag("dd-a2-maker-bias", {{"a", state.a()}});
    if (state.b() > state.n() / (4 * std::log(static_cast<double>(state.n())))) {
      flag("dd-a2-bias", {{"b", state.b()}});
    }
    note("dd-a2", {{"d", d_}, {"mindeg", params_.to_json()}});
  }
  DegreeWeights w(params_, Player::Breaker);
  w.refresh(state);
  return mindeg_select(state, w, state.claims_due(), Player::Breaker);
}

bool ball_bound_holds(const Graph& g, int d) {
  const auto profile = degree_profile(g);
  const double delta = profile.degrees.empty() ? 0 : *std::max_element(profile.degrees.begin(), profile.degrees.end());
  for (Vertex v = 0; v < g.order(); ++v) {
    if (static_cast<double>(ball(g, v, d).size()) >= 2 * std::pow(delta, d)) return false;
  }
  return true;
}

}  // namespace mbg
