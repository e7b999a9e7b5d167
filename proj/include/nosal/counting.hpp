#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "nosal/graph.hpp"

namespace nosal {

// All counts are subgraph copies, not induced copies: a K4 contains three
// 4-cycles and six kites.

struct BookResult {
  std::int64_t size = 0;
  /// Lexicographically smallest edge attaining the size; empty if m = 0.
  std::optional<Edge> witness;
};

/// bk(G): the largest codegree over edges.
BookResult book_size(const Graph& g);

struct GeneralizedBookResult {
  std::int64_t k = 0;
  /// Lexicographically smallest r-clique attaining k; empty if none exists.
  std::vector<Vertex> clique;
};

/// Largest k with K_r v I_k contained in G.
GeneralizedBookResult generalized_book(const Graph& g, int r);

struct JointResult {
  std::int64_t count = 0;
  std::optional<Edge> witness;
};

/// js_{r+1}(G): the most (r+1)-cliques sharing one edge, computed as the
/// number of K_{r-1} inside each common neighborhood.
JointResult joint_size(const Graph& g, int r);

/// Calls `visit` for each clique of exactly `size` vertices, in lexicographic
/// order of sorted vertex tuples, restricted to vertices in `within` (all
/// vertices when empty). `common` is the full common neighborhood.
void for_each_clique(const Graph& g, int size, std::span<const Vertex> within,
                     const std::function<void(std::span<const Vertex> clique,
                                              std::span<const Vertex> common)>& visit);

/// Early-exit existence test for K_t.
bool has_clique(const Graph& g, int t);

/// Number of K_t subgraphs.
std::int64_t clique_count(const Graph& g, int t);

/// Number of K_t subgraphs among the vertices of S (induced on S).
std::int64_t clique_count_within(const Graph& g, std::span<const Vertex> S, int t);

/// Kruskal-Katona style ceiling C(x, t) with C(x, 2) = m.
double kruskal_katona_bound(std::int64_t m, int t);

std::int64_t triangle_count(const Graph& g);

enum class C4Method { Codegree, Walks, Trace, Brute };

const char* to_string(C4Method m) noexcept;

struct C4Count {
  std::int64_t value = 0;
  /// Unrounded value for the trace method; equals value otherwise.
  double raw = 0.0;
};

inline constexpr std::size_t kBruteC4Cap = 14;

C4Count c4_count(const Graph& g, C4Method method);

/// Kites (K4 minus an edge): sum over edges of C(codeg, 2).
std::int64_t kite_count(const Graph& g);

/// Edges lying in at least one triangle.
std::int64_t triangular_edges(const Graph& g);

/// Non-adjacent pairs whose common neighborhood spans an edge.
std::int64_t k4_saturating_edges(const Graph& g);

struct ChordalSubgraph {
  std::int64_t edges = 0;
  std::vector<Edge> witness;
};

/// The largest book, which is chordal: 2 bk(G) + 1 edges (0 if m = 0).
ChordalSubgraph chordal_lower_bound(const Graph& g);

inline constexpr std::size_t kChordalExactCap = 10;

/// Maximum chordal subgraph by search over perfect elimination orderings.
ChordalSubgraph chordal_exact(const Graph& g);

/// M(G) = sum of squared degrees.
std::int64_t degree_power(const Graph& g);

struct CountReport {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t triangles = 0;
  std::int64_t c4 = 0;
  std::int64_t kites = 0;
  BookResult book;
  std::map<int, GeneralizedBookResult> generalized_book;
  std::map<int, JointResult> joint_size;
  std::map<int, std::int64_t> clique_counts;
  std::int64_t triangular_edges = 0;
  std::int64_t k4_saturating = 0;
  ChordalSubgraph chordal_lb;
  std::int64_t degree_power = 0;
  std::int64_t max_degree = 0;
};

struct CountOptions {
  /// generalized_book and joint_size are filled for r = 2..max_r.
  int max_r = 3;
  /// clique_counts are filled for t = 1..max_clique.
  int max_clique = 4;
};

CountReport count_all(const Graph& g, CountOptions opts = {});

}  // namespace nosal
