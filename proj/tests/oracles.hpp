// Independent brute-force oracles and small-graph helpers for the test suites.
// Nothing here calls into the counting or spectral kernels under test.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "nosal/graph.hpp"

namespace nosal::oracle {

inline Graph complete(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline Graph cycle(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i < n; ++i) g.add_edge(i, static_cast<Vertex>((i + 1) % n));
  return g;
}

inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (Vertex i = 0; i < a; ++i)
    for (Vertex j = 0; j < b; ++j) g.add_edge(i, static_cast<Vertex>(a + j));
  return g;
}

inline Graph star(std::size_t leaves) { return complete_bipartite(1, leaves); }

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

/// Adjacency as a plain 0/1 matrix built from has_edge only.
inline std::vector<std::vector<int>> matrix(const Graph& g) {
  std::vector<std::vector<int>> a(g.n(), std::vector<int>(g.n(), 0));
  for (Vertex i = 0; i < g.n(); ++i)
    for (Vertex j = 0; j < g.n(); ++j)
      if (i != j && g.has_edge(i, j)) a[i][j] = 1;
  return a;
}

inline std::int64_t brute_triangles(const Graph& g) {
  auto a = matrix(g);
  std::int64_t c = 0;
  const auto n = g.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) c += a[i][j] && a[j][k] && a[i][k];
  return c;
}

/// 4-cycles as subgraphs: each 4-subset supports three possible 4-cycles.
inline std::int64_t brute_c4(const Graph& g) {
  auto a = matrix(g);
  std::int64_t c = 0;
  const auto n = g.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          c += a[i][j] && a[j][k] && a[k][l] && a[l][i];
          c += a[i][j] && a[j][l] && a[l][k] && a[k][i];
          c += a[i][k] && a[k][j] && a[j][l] && a[l][i];
        }
  return c;
}

/// Kites (K4 minus an edge) as subgraphs: on each 4-subset, one kite per
/// choice of the missing pair whose five complementary pairs are all edges.
inline std::int64_t brute_kites(const Graph& g) {
  auto a = matrix(g);
  std::int64_t c = 0;
  const auto n = g.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          std::array<std::size_t, 4> v{i, j, k, l};
          std::array<int, 6> e{};
          int idx = 0;
          for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y) e[idx++] = a[v[x]][v[y]];
          int present = 0;
          for (int b : e) present += b;
          if (present == 6) c += 6;
          else if (present == 5) c += 1;
        }
  return c;
}

/// Largest book by explicit triangle enumeration over each edge.
inline std::int64_t brute_book(const Graph& g) {
  auto a = matrix(g);
  std::int64_t best = 0;
  const auto n = g.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!a[i][j]) continue;
      std::int64_t k = 0;
      for (std::size_t w = 0; w < n; ++w) k += a[i][w] && a[j][w];
      best = std::max(best, k);
    }
  return best;
}

/// Number of t-cliques by subset enumeration (n <= 20).
inline std::int64_t brute_cliques(const Graph& g, int t) {
  auto a = matrix(g);
  const auto n = static_cast<int>(g.n());
  std::int64_t c = 0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) != t) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (mask >> i & 1)
        for (int j = i + 1; j < n && ok; ++j)
          if (mask >> j & 1) ok = a[i][j];
    c += ok;
  }
  return c;
}

/// Chordality by repeatedly deleting simplicial vertices.
inline bool is_chordal(const std::vector<std::vector<int>>& a) {
  const auto n = a.size();
  std::vector<char> alive(n, 1);
  for (std::size_t round = 0; round < n; ++round) {
    bool removed = false;
    for (std::size_t v = 0; v < n && !removed; ++v) {
      if (!alive[v]) continue;
      std::vector<std::size_t> nb;
      for (std::size_t w = 0; w < n; ++w)
        if (alive[w] && a[v][w]) nb.push_back(w);
      bool simplicial = true;
      for (std::size_t x = 0; x < nb.size() && simplicial; ++x)
        for (std::size_t y = x + 1; y < nb.size() && simplicial; ++y)
          simplicial = a[nb[x]][nb[y]];
      if (simplicial) {
        alive[v] = 0;
        removed = true;
      }
    }
    if (!removed) return false;
  }
  return true;
}

/// Max edge count of a chordal spanning subgraph, brute force over edge
/// subsets (m <= 16).
inline std::int64_t brute_chordal(const Graph& g) {
  auto edges = g.edges();
  const auto m = edges.size();
  std::int64_t best = 0;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    const int k = std::popcount(mask);
    if (k <= best) continue;
    std::vector<std::vector<int>> a(g.n(), std::vector<int>(g.n(), 0));
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) a[edges[i].u][edges[i].v] = a[edges[i].v][edges[i].u] = 1;
    if (is_chordal(a)) best = k;
  }
  return best;
}

inline std::int64_t choose2(std::int64_t x) { return x * (x - 1) / 2; }

}  // namespace nosal::oracle
