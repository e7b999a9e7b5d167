#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nosal {

using Vertex = std::uint32_t;

/// Undirected edge stored with u < v; ordering is lexicographic.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge of(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph.
///
/// Every vertex keeps a sorted neighbor list. While n <= kBitsetCap the graph
/// also keeps one bitset row per vertex (64 vertices per word), which is what
/// codegree and clique kernels use; above the cap they fall back to sorted
/// list intersection.
class Graph {
 public:
  static constexpr std::size_t kBitsetCap = 20000;

  Graph() = default;
  explicit Graph(std::size_t n);

  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t n() const noexcept { return adj_.size(); }
  std::size_t m() const noexcept { return m_; }
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  std::size_t max_degree() const noexcept;
  std::vector<std::size_t> degrees() const;

  bool has_edge(Vertex u, Vertex v) const;
  std::span<const Vertex> neighbors(Vertex v) const;

  /// |N(u) ∩ N(v)|; u and v need not be adjacent.
  std::size_t codegree(Vertex u, Vertex v) const;
  std::vector<Vertex> common_neighbors(Vertex u, Vertex v) const;

  /// All edges, lexicographically sorted.
  std::vector<Edge> edges() const;

  bool has_bitsets() const noexcept { return words_ != 0 || adj_.empty(); }
  std::size_t words_per_row() const noexcept { return words_; }
  /// Bitset row of v. Requires has_bitsets().
  std::span<const std::uint64_t> row(Vertex v) const;

  /// Returns false if the edge was already present. Self-loops throw.
  bool add_edge(Vertex u, Vertex v);
  /// Returns false if the edge was absent.
  bool remove_edge(Vertex u, Vertex v);

  void check_vertex(Vertex v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adj_ == b.adj_;
  }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> bits_;
  std::size_t words_ = 0;
  std::size_t m_ = 0;
};

struct InducedGraph {
  Graph graph;
  /// index_map[new] = old vertex id.
  std::vector<Vertex> index_map;
};

/// Subgraph induced by S (S is deduplicated and sorted first).
InducedGraph induced(const Graph& g, std::span<const Vertex> S);

/// Edges of g with one endpoint in A and the other in B; A and B must be
/// disjoint. Vertices are renumbered A first, then B, each in sorted order.
InducedGraph bipartite_induced(const Graph& g, std::span<const Vertex> A,
                               std::span<const Vertex> B);

/// Connected components, each sorted, ordered by smallest vertex.
std::vector<std::vector<Vertex>> components(const Graph& g);

struct BipartiteCheck {
  bool bipartite = false;
  /// Proper 2-coloring (0/1) when bipartite.
  std::vector<int> coloring;
  /// Closed odd walk v0 v1 ... vk (v0 adjacent to vk) when not bipartite;
  /// it is a simple odd cycle.
  std::vector<Vertex> odd_cycle;
};

BipartiteCheck is_bipartite(const Graph& g);

}  // namespace nosal
