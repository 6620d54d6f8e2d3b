#include "mbg/heuristics.hpp"

#include <algorithm>
#include <bit>
#include <climits>

namespace mbg {
namespace {

using Bits = std::vector<std::uint64_t>;

struct BitGraph {
  int n;
  std::size_t words;
  std::vector<Bits> adj;

  explicit BitGraph(const Graph& g)
      : n(g.order()), words(static_cast<std::size_t>(n + 63) / 64), adj(static_cast<std::size_t>(n), Bits(words)) {
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w : g.neighbors(v)) set(adj[static_cast<std::size_t>(v)], w);
  }
  static void set(Bits& b, int i) { b[static_cast<std::size_t>(i) / 64] |= 1ULL << (i % 64); }
  static bool test(const Bits& b, int i) { return (b[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1; }
  void add(Vertex u, Vertex v) {
    set(adj[static_cast<std::size_t>(u)], v);
    set(adj[static_cast<std::size_t>(v)], u);
  }
  // vertices within distance two of v, v included
  Bits reach2(Vertex v) const {
    Bits r = adj[static_cast<std::size_t>(v)];
    set(r, v);
    for (Vertex w = 0; w < n; ++w) {
      if (!test(adj[static_cast<std::size_t>(v)], w)) continue;
      for (std::size_t i = 0; i < words; ++i) r[i] |= adj[static_cast<std::size_t>(w)][i];
    }
    return r;
  }
};

std::vector<Position> fill_lowest(const GameState& state, std::vector<Position> picks) {
  for (Position p = 0; p < state.edge_total() && picks.size() < state.claims_due(); ++p) {
    if (state.owner(p) == Owner::Unclaimed && std::find(picks.begin(), picks.end(), p) == picks.end()) {
      picks.push_back(p);
    }
  }
  return picks;
}

}  // namespace

std::vector<Position> RandomPlayer::select(const GameState& state) {
  auto free = state.board().unclaimed_positions();
  const std::size_t k = state.claims_due();
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, free.size() - 1);
    std::swap(free[i], free[pick(rng_)]);
  }
  free.resize(k);
  return free;
}

std::vector<Position> LowestPlayer::select(const GameState& state) {
  return state.board().lowest_unclaimed(state.claims_due());
}

std::vector<Position> GreedyDegreeMaker::select(const GameState& state) {
  const int n = state.n();
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = state.degree(Player::Maker, v);
  std::vector<Position> picks;
  auto open = [&](Vertex u, Vertex v) {
    const Position p = state.index(u, v);
    return state.owner(p) == Owner::Unclaimed && std::find(picks.begin(), picks.end(), p) == picks.end();
  };
  while (picks.size() < state.claims_due()) {
    Edge best;
    bool found = false;
    std::pair<int, int> key{INT_MAX, INT_MAX};
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = 0; v < n; ++v) {
        if (u == v || !open(u, v)) continue;
        const std::pair<int, int> k{deg[static_cast<std::size_t>(u)], deg[static_cast<std::size_t>(v)]};
        if (!found || k < key || (k == key && Edge(u, v) < best)) {
          found = true;
          key = k;
          best = Edge(u, v);
        }
      }
    }
    if (!found) break;
    picks.push_back(state.index(best));
    ++deg[static_cast<std::size_t>(best.u)];
    ++deg[static_cast<std::size_t>(best.v)];
  }
  return picks;
}

std::vector<Position> TwoPathGreedyMaker::select(const GameState& state) {
  const int n = state.n();
  BitGraph g(state.maker_graph());
  std::vector<Position> picks;
  while (picks.size() < state.claims_due()) {
    std::vector<Bits> r2(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) r2[static_cast<std::size_t>(v)] = g.reach2(v);
    int best_gain = -1;
    Position best = 0;
    for (Position p = 0; p < state.edge_total(); ++p) {
      if (state.owner(p) != Owner::Unclaimed || std::find(picks.begin(), picks.end(), p) != picks.end()) continue;
      const Edge e = state.edge(p);
      const auto& Nu = g.adj[static_cast<std::size_t>(e.u)];
      const auto& Nv = g.adj[static_cast<std::size_t>(e.v)];
      const auto& Ru = r2[static_cast<std::size_t>(e.u)];
      const auto& Rv = r2[static_cast<std::size_t>(e.v)];
      int gain = 0;
      for (std::size_t i = 0; i < g.words; ++i) {
        gain += std::popcount(Nv[i] & ~Ru[i]) + std::popcount(Nu[i] & ~Rv[i]);
      }
      if (!BitGraph::test(Ru, e.v)) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = p;
      }
    }
    if (best_gain < 0) break;
    picks.push_back(best);
    const Edge e = state.edge(best);
    g.add(e.u, e.v);
  }
  return picks;
}

std::vector<Position> GreedyPathMaker::select(const GameState& state) {
  const int n = state.n();
  Vertex u = -1, v = -1;
  for (const Move& m : state.log()) {
    if (m.player == Player::Breaker && !m.positions.empty()) {
      const Edge e = state.edge(m.positions.front());
      u = e.u;
      v = e.v;
      break;
    }
  }
  if (u < 0) return fill_lowest(state, {});
  Graph g = state.maker_graph();
  std::vector<Position> picks;
  while (picks.size() < state.claims_due()) {
    auto as_int = [n](const std::vector<Distance>& d) {
      std::vector<int> out;
      for (const auto& x : d) out.push_back(x.is_finite() ? x.value() : n);
      return out;
    };
    const auto du = as_int(distances_from(g, u));
    const auto dv = as_int(distances_from(g, v));
    int best_len = INT_MAX;
    Position best = 0;
    for (Position p = 0; p < state.edge_total(); ++p) {
      if (state.owner(p) != Owner::Unclaimed || std::find(picks.begin(), picks.end(), p) != picks.end()) continue;
      const Edge e = state.edge(p);
      const auto x = static_cast<std::size_t>(e.u), y = static_cast<std::size_t>(e.v);
      const int len = std::min(du[x] + 1 + dv[y], du[y] + 1 + dv[x]);
      if (len < best_len) {
        best_len = len;
        best = p;
      }
    }
    if (best_len == INT_MAX) break;
    picks.push_back(best);
    const Edge e = state.edge(best);
    g.add_edge(e.u, e.v);
  }
  return picks;
}

}  // namespace mbg
