#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nosal/graph.hpp"
#include "nosal/spectral.hpp"

namespace nosal {

/// Vertex weights w and edge weights p on a base graph. p is stored per
/// adjacency slot, so p(u, v) and p(v, u) always agree.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  /// p starts at zero on every edge.
  WeightedGraph(Graph base, std::vector<double> w);

  const Graph& base() const noexcept { return base_; }
  const std::vector<double>& w() const noexcept { return w_; }
  double w(Vertex v) const { return w_.at(v); }

  /// Throws Index if {u, v} is not an edge.
  double p(Vertex u, Vertex v) const;
  void set_p(Vertex u, Vertex v, double value);

  /// p on the k-th neighbor of u, matching base().neighbors(u)[k].
  double p_slot(Vertex u, std::size_t k) const { return p_[u][k]; }

  /// Throws Precondition unless sum w = 1 within 1e-12, all w >= 0 and all
  /// p in [0, 1].
  void validate() const;

 private:
  std::size_t slot(Vertex u, Vertex v) const;

  Graph base_;
  std::vector<double> w_;
  std::vector<std::vector<double>> p_;
};

/// Weights w = x^2 and p = max(c x_i x_j - d, 0) / (x_i^2 x_j^2) with
/// c = sqrt(2(r-1)/(r m)), d = (r-1)/(2 r m). r = 2 gives the book weights.
/// Off the certificate's component w and p are zero.
WeightedGraph proof_weights_joint(const Graph& g, const SpectralCertificate& cert, int r);
WeightedGraph proof_weights_book(const Graph& g, const SpectralCertificate& cert);

/// Sum over edges of p_ij w_i w_j.
double weighted_edge_density(const WeightedGraph& wg);

struct WeightedEdge {
  Edge edge;
  double value = 0.0;
};

/// argmax over edges with p > 0 of sum_{k in B(i,j)} p_ik p_jk w_k.
/// Ties go to the smaller edge. Throws NoWitness if every p is zero.
WeightedEdge best_weighted_book_edge(const WeightedGraph& wg);

/// Objective for one edge: sum over (r+1)-cliques C through {i, j} of the
/// product of w over C \ {i, j} and p over all other pairs of C.
double weighted_joint_value(const WeightedGraph& wg, Edge e, int r);

WeightedEdge best_weighted_joint_edge(const WeightedGraph& wg, int r);

struct ProofBookWitness {
  Edge edge;
  /// Endpoint with the larger Perron entry.
  Vertex apex = 0;
  /// Common neighbors k of the edge with p(apex, k) > 0.
  std::vector<Vertex> book;
  double density = 0.0;
  double lemma_value = 0.0;
  /// sqrt(m) / 144.
  double floor = 0.0;
  bool meets_floor = false;
};

/// Runs the weighted pipeline end to end. Requires a certified Nosal graph.
ProofBookWitness book_witness_from_proof(const Graph& g, const SpectralCertificate& cert);

/// Vertex i becomes floor(w_i N) consecutive vertices; each cross pair over
/// an edge {i, j} appears with probability p_ij. Deterministic given seed.
Graph random_blowup(const WeightedGraph& wg, std::size_t N, std::uint64_t seed);

/// sum over edges of p_ij floor(w_i N) floor(w_j N).
double blowup_expected_edges(const WeightedGraph& wg, std::size_t N);

}  // namespace nosal
