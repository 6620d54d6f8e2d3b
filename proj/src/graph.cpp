#include "mbg/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "mbg/errors.hpp"

namespace mbg {

EdgeTable::EdgeTable(int n) : n_(n) {
  edges_.reserve(edge_count(n));
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges_.emplace_back(u, v);
  }
}

int Distance::value() const {
  if (!is_finite()) throw Error(ErrorCode::InvalidParameters, "distance is infinite");
  return d_;
}

Graph::Graph(int n)
    : n_(n),
      adj_(static_cast<std::size_t>(std::max(n, 0))),
      matrix_(static_cast<std::size_t>(std::max(n, 0)) * static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw Error(ErrorCode::InvalidParameters, "negative vertex count");
}

void Graph::check(Vertex v) const {
  if (v < 0 || v >= n_) {
    throw Error(ErrorCode::VertexOutOfRange,
                "vertex " + std::to_string(v) + " not in [0," + std::to_string(n_) + ")");
  }
}

bool Graph::add_edge(Vertex u, Vertex v) {
  check(u);
  check(v);
  if (u == v) throw Error(ErrorCode::InvalidParameters, "self-loop");
  const auto nu = static_cast<std::size_t>(u);
  const auto nv = static_cast<std::size_t>(v);
  const auto n = static_cast<std::size_t>(n_);
  if (matrix_[nu * n + nv]) return false;
  matrix_[nu * n + nv] = true;
  matrix_[nv * n + nu] = true;
  adj_[nu].push_back(v);
  adj_[nv].push_back(u);
  ++edges_;
  return true;
}

bool Graph::remove_edge(Vertex u, Vertex v) {
  if (!has_edge(u, v)) return false;
  const auto nu = static_cast<std::size_t>(u);
  const auto nv = static_cast<std::size_t>(v);
  const auto n = static_cast<std::size_t>(n_);
  matrix_[nu * n + nv] = false;
  matrix_[nv * n + nu] = false;
  std::erase(adj_[nu], v);
  std::erase(adj_[nv], u);
  --edges_;
  return true;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  check(u);
  check(v);
  return matrix_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(v)];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : adj_[static_cast<std::size_t>(u)]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

std::vector<std::vector<Vertex>> bfs_layers(const Graph& g, Vertex source, int limit) {
  if (source < 0 || source >= g.order()) {
    throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(source));
  }
  std::vector<std::vector<Vertex>> layers{{source}};
  std::vector<bool> seen(static_cast<std::size_t>(g.order()));
  seen[static_cast<std::size_t>(source)] = true;
  for (int depth = 1; depth <= limit; ++depth) {
    std::vector<Vertex> next;
    for (Vertex x : layers.back()) {
      for (Vertex y : g.neighbors(x)) {
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = true;
          next.push_back(y);
        }
      }
    }
    if (next.empty()) break;
    layers.push_back(std::move(next));
  }
  return layers;
}

std::vector<Distance> distances_from(const Graph& g, Vertex source) {
  if (source < 0 || source >= g.order()) {
    throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(source));
  }
  std::vector<int> d(static_cast<std::size_t>(g.order()), -1);
  std::deque<Vertex> queue{source};
  d[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    for (Vertex y : g.neighbors(x)) {
      if (d[static_cast<std::size_t>(y)] < 0) {
        d[static_cast<std::size_t>(y)] = d[static_cast<std::size_t>(x)] + 1;
        queue.push_back(y);
      }
    }
  }
  std::vector<Distance> out;
  out.reserve(d.size());
  for (int x : d) out.push_back(x < 0 ? Distance::infinite() : Distance::finite(x));
  return out;
}

Distance dist(const Graph& g, Vertex u, Vertex v) {
  if (v < 0 || v >= g.order()) throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v));
  return distances_from(g, u)[static_cast<std::size_t>(v)];
}

std::vector<Vertex> ball(const Graph& g, Vertex v, int radius) {
  if (radius < 0) throw Error(ErrorCode::InvalidParameters, "negative radius");
  std::vector<Vertex> out;
  for (auto& layer : bfs_layers(g, v, radius)) out.insert(out.end(), layer.begin(), layer.end());
  std::sort(out.begin(), out.end());
  return out;
}

Distance diameter(const Graph& g) {
  if (g.order() < 2) throw Error(ErrorCode::InvalidParameters, "diameter needs n >= 2");
  Distance worst = Distance::finite(0);
  for (Vertex v = 0; v < g.order(); ++v) {
    for (const Distance& d : distances_from(g, v)) {
      if (!d.is_finite()) return Distance::infinite();
      worst = std::max(worst, d);
    }
  }
  return worst;
}

DegreeProfile degree_profile(const Graph& g) {
  DegreeProfile p;
  p.degrees.resize(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v) p.degrees[static_cast<std::size_t>(v)] = g.degree(v);
  if (!p.degrees.empty()) {
    p.min = *std::min_element(p.degrees.begin(), p.degrees.end());
    p.max = *std::max_element(p.degrees.begin(), p.degrees.end());
  }
  return p;
}

bool has_expansion(const Graph& g, int r, int s) {
  const int n = g.order();
  if (r < 1 || s < 1) throw Error(ErrorCode::InvalidParameters, "r and s must be positive");
  if (r + s > n) throw Error(ErrorCode::InvalidParameters, "r + s exceeds n");

  std::vector<int> pick(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) pick[static_cast<std::size_t>(i)] = i;
  std::vector<bool> covered(static_cast<std::size_t>(n));
  while (true) {
    std::fill(covered.begin(), covered.end(), false);
    for (int x : pick) {
      covered[static_cast<std::size_t>(x)] = true;
      for (Vertex y : g.neighbors(x)) covered[static_cast<std::size_t>(y)] = true;
    }
    const auto free = std::count(covered.begin(), covered.end(), false);
    if (free >= s) return false;

    // next r-combination in lexicographic order
    int i = r - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) return true;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace mbg
