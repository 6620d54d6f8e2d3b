#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mbg {

using Vertex = int;

/// An edge of K_n, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;
};

constexpr std::size_t edge_count(int n) noexcept {
  return n < 2 ? 0 : static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

/// Lexicographic rank of (u,v) among the edges of K_n.
constexpr std::size_t edge_index(int n, Edge e) noexcept {
  const auto u = static_cast<std::size_t>(e.u);
  const auto v = static_cast<std::size_t>(e.v);
  const auto nn = static_cast<std::size_t>(n);
  return u * nn - u * (u + 1) / 2 + (v - u - 1);
}

/// Inverse of edge_index, backed by a table for repeated lookups.
class EdgeTable {
 public:
  explicit EdgeTable(int n);
  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  Edge edge(std::size_t index) const { return edges_.at(index); }
  std::size_t index(Edge e) const noexcept { return edge_index(n_, e); }
  std::size_t index(Vertex a, Vertex b) const noexcept { return edge_index(n_, Edge(a, b)); }

 private:
  int n_;
  std::vector<Edge> edges_;
};

/// Shortest-path length; Infinite compares greater than every finite value.
class Distance {
 public:
  static constexpr Distance infinite() noexcept { return Distance(-1); }
  static constexpr Distance finite(int d) noexcept { return Distance(d); }

  constexpr bool is_finite() const noexcept { return d_ >= 0; }
  int value() const;

  constexpr bool operator==(const Distance&) const = default;
  constexpr std::strong_ordering operator<=>(const Distance& o) const noexcept {
    if (is_finite() && o.is_finite()) return d_ <=> o.d_;
    if (is_finite()) return std::strong_ordering::less;
    if (o.is_finite()) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  constexpr bool at_most(int bound) const noexcept { return is_finite() && d_ <= bound; }

 private:
  constexpr explicit Distance(int d) : d_(d) {}
  int d_;
};

/// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  explicit Graph(int n = 0);

  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_; }

  /// Returns false if the edge was already present.
  bool add_edge(Vertex u, Vertex v);
  bool remove_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;
  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  std::vector<Edge> edges() const;

  static Graph complete(int n);

 private:
  void check(Vertex v) const;

  int n_;
  std::size_t edges_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<bool> matrix_;
};

/// BFS distances from `source`; unreachable vertices are infinite.
std::vector<Distance> distances_from(const Graph& g, Vertex source);

/// BFS restricted to depth `limit`; returns vertices at distance exactly 0..limit
/// grouped by layer.
std::vector<std::vector<Vertex>> bfs_layers(const Graph& g, Vertex source, int limit);

Distance dist(const Graph& g, Vertex u, Vertex v);
std::vector<Vertex> ball(const Graph& g, Vertex v, int radius);
Distance diameter(const Graph& g);

struct DegreeProfile {
  std::vector<int> degrees;
  int min = 0;
  int max = 0;
};
DegreeProfile degree_profile(const Graph& g);

/// True iff every disjoint pair (R,S) with |R| = r and |S| = s has a g-edge
/// between them. Enumerates R only: fails iff some R has at least s vertices
/// outside R with no neighbour in R.
bool has_expansion(const Graph& g, int r, int s);

}  // namespace mbg
