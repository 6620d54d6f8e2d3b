#include "mbg/solver.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

#include "mbg/transcript.hpp"

namespace mbg {
namespace {

constexpr int kMaxN = 8;

struct Layout {
  int n = 0;
  int m = 0;
  std::array<std::array<int, kMaxN>, kMaxN> index{};
  std::vector<std::pair<int, int>> ends;

  explicit Layout(int order) : n(order) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        index[u][v] = index[v][u] = m++;
        ends.emplace_back(u, v);
      }
  }
};

const Layout& layout(int n) {
  static const std::array<Layout, kMaxN + 1> all = [] {
    std::array<Layout, kMaxN + 1> a{Layout(0), Layout(1), Layout(2), Layout(3), Layout(4),
                                    Layout(5), Layout(6), Layout(7), Layout(8)};
    return a;
  }();
  return all.at(static_cast<std::size_t>(n));
}

std::uint32_t relabel(const Layout& L, std::uint32_t mask, const std::array<int, kMaxN>& to) {
  std::uint32_t out = 0;
  while (mask != 0) {
    const int e = std::countr_zero(mask);
    mask &= mask - 1;
    const auto [u, v] = L.ends[static_cast<std::size_t>(e)];
    out |= 1u << L.index[to[u]][to[v]];
  }
  return out;
}

// every pair within distance d using edges in `mask`
bool within(const Layout& L, std::uint32_t mask, int d) {
  std::array<std::uint32_t, kMaxN> adj{};
  for (std::uint32_t m = mask; m != 0; m &= m - 1) {
    const auto [u, v] = L.ends[static_cast<std::size_t>(std::countr_zero(m))];
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  const std::uint32_t all = (1u << L.n) - 1;
  for (int s = 0; s < L.n; ++s) {
    std::uint32_t reach = 1u << s;
    for (int step = 0; step < d && reach != all; ++step) {
      std::uint32_t next = reach;
      for (std::uint32_t r = reach; r != 0; r &= r - 1) next |= adj[std::countr_zero(r)];
      if (next == reach) break;
      reach = next;
    }
    if (reach != all) return false;
  }
  return true;
}

class Solver {
 public:
  Solver(int n, int a, int b, int d, const SolveOptions& o) : L_(layout(n)), a_(a), b_(b), d_(d), opt_(o) {
    full_ = L_.m == 32 ? ~0u : (1u << L_.m) - 1;
  }

  bool maker_wins(std::uint32_t M, std::uint32_t B, Player side) {
    ++visited_;
    const std::uint32_t free = full_ & ~M & ~B;
    if (free == 0) return within(L_, M, d_);
    if (opt_.cutoffs) {
      if (within(L_, M, d_)) return true;
      if (!within(L_, M | free, d_)) return false;
    }
    const int due = std::min(side == Player::Maker ? a_ : b_, std::popcount(free));
    CanonicalKey key;
    if (opt_.memo) {
      key = opt_.canonicalize ? canonical_key(L_.n, M, B, side, due)
                              : CanonicalKey{M, B, static_cast<std::uint8_t>(side), static_cast<std::uint8_t>(due)};
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    const bool v = turn(M, B, side, due, 0);
    if (opt_.memo) {
      if (memo_.size() >= opt_.memo_cap) {
        throw Error(ErrorCode::OverCap, "memo table reached " + std::to_string(memo_.size()) + " entries");
      }
      memo_.emplace(key, v);
    }
    return v;
  }

  std::size_t visited() const { return visited_; }

 private:
  // claims left this turn, all at indices >= from
  bool turn(std::uint32_t M, std::uint32_t B, Player side, int left, int from) {
    const std::uint32_t free = full_ & ~M & ~B;
    const bool maker = side == Player::Maker;
    for (int e = from; e < L_.m; ++e) {
      const std::uint32_t bit = 1u << e;
      if ((free & bit) == 0) continue;
      const std::uint32_t above = free & ~((bit << 1) - 1);
      if (std::popcount(above) < left - 1) break;
      const std::uint32_t M2 = maker ? M | bit : M;
      const std::uint32_t B2 = maker ? B : B | bit;
      const bool v = left == 1 ? maker_wins(M2, B2, opponent(side)) : turn(M2, B2, side, left - 1, e + 1);
      if (v == maker) return v;
    }
    return !maker;
  }

  const Layout& L_;
  int a_, b_, d_;
  SolveOptions opt_;
  std::uint32_t full_;
  std::size_t visited_ = 0;
  std::unordered_map<CanonicalKey, bool, CanonicalKeyHash> memo_;
};

}  // namespace

CanonicalKey canonical_key(int n, std::uint32_t maker, std::uint32_t breaker, Player side, int remaining) {
  if (n < 2 || n > kMaxN) throw Error(ErrorCode::OverCap, "canonical keys support 2 <= n <= 8");
  const Layout& L = layout(n);
  std::array<std::pair<int, int>, kMaxN> sig{};
  for (std::uint32_t m = maker; m != 0; m &= m - 1) {
    const auto [u, v] = L.ends[static_cast<std::size_t>(std::countr_zero(m))];
    ++sig[u].first;
    ++sig[v].first;
  }
  for (std::uint32_t m = breaker; m != 0; m &= m - 1) {
    const auto [u, v] = L.ends[static_cast<std::size_t>(std::countr_zero(m))];
    ++sig[u].second;
    ++sig[v].second;
  }
  std::array<int, kMaxN> order{};
  std::iota(order.begin(), order.begin() + n, 0);
  std::sort(order.begin(), order.begin() + n, [&](int x, int y) { return sig[x] < sig[y]; });

  // classes of equal signature occupy consecutive slots; permute within each
  std::vector<std::pair<int, int>> classes;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && sig[order[j]] == sig[order[i]]) ++j;
    classes.emplace_back(i, j);
    i = j;
  }
  std::array<int, kMaxN> slots = order;
  for (auto [lo, hi] : classes) std::sort(slots.begin() + lo, slots.begin() + hi);

  std::uint32_t best_m = ~0u, best_b = ~0u;
  std::array<int, kMaxN> to{};
  while (true) {
    for (int i = 0; i < n; ++i) to[slots[i]] = i;
    const std::uint32_t rm = relabel(L, maker, to);
    if (rm <= best_m) {
      const std::uint32_t rb = relabel(L, breaker, to);
      if (rm < best_m || rb < best_b) {
        best_m = rm;
        best_b = rb;
      }
    }
    std::size_t c = 0;
    for (; c < classes.size(); ++c) {
      auto [lo, hi] = classes[c];
      if (std::next_permutation(slots.begin() + lo, slots.begin() + hi)) break;
    }
    if (c == classes.size()) break;
  }
  return {best_m, best_b, static_cast<std::uint8_t>(side), static_cast<std::uint8_t>(remaining)};
}

CanonicalKey canonical_key(const GameState& state) {
  if (state.n() > kMaxN) throw Error(ErrorCode::OverCap, "canonical keys support n <= 8");
  std::uint32_t M = 0, B = 0;
  for (Position p = 0; p < state.edge_total(); ++p) {
    if (state.owner(p) == Owner::Maker) M |= 1u << p;
    if (state.owner(p) == Owner::Breaker) B |= 1u << p;
  }
  return canonical_key(state.n(), M, B, state.to_move(), static_cast<int>(state.claims_due()));
}

SolveResult solve(int n, int a, int b, int d, Player first, const SolveOptions& options) {
  if (n < 2 || a < 1 || b < 1 || d < 1) throw Error(ErrorCode::InvalidParameters, "need n >= 2, a, b, d >= 1");
  if (edge_count(n) > options.edge_cap || n > kMaxN) {
    throw Error(ErrorCode::OverCap, "K_" + std::to_string(n) + " has " + std::to_string(edge_count(n)) +
                                        " edges, cap is " + std::to_string(options.edge_cap));
  }
  const auto t0 = std::chrono::steady_clock::now();
  Solver s(n, a, b, d, options);
  SolveResult r;
  r.winner = s.maker_wins(0, 0, first) ? Player::Maker : Player::Breaker;
  r.states_visited = s.visited();
  r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

nlohmann::json solve_json(int n, int a, int b, int d, Player first, const SolveResult& r) {
  return {{"n", n},
          {"a", a},
          {"b", b},
          {"d", d},
          {"first", to_string(first)},
          {"winner", to_string(r.winner)},
          {"states_visited", r.states_visited},
          {"elapsed", r.elapsed}};
}

std::optional<Player> diameter_decided(const GameState& state, int d) {
  if (diameter_at_most(state.maker_graph(), d)) return Player::Maker;
  if (state.exhausted()) return Player::Breaker;
  Graph open = state.maker_graph();
  for (Position p = 0; p < state.edge_total(); ++p) {
    if (state.owner(p) == Owner::Unclaimed) {
      const Edge e = state.edge(p);
      open.add_edge(e.u, e.v);
    }
  }
  if (!diameter_at_most(open, d)) return Player::Breaker;
  return std::nullopt;
}

VerifyResult verify_one_sided(int n, int a, int b, int d, const Strategy& scripted, Player side,
                              const VerifyOptions& options) {
  const Judge<GameState> judge = [d, side](const GameState& s, const Strategy&) -> std::optional<bool> {
    if (auto w = diameter_decided(s, d)) return *w == side;
    return std::nullopt;
  };
  return verify_one_sided(GameState(n, a, b), scripted, side, judge, options);
}

}  // namespace mbg
