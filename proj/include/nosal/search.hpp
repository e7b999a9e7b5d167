#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nosal/graph.hpp"

namespace nosal {

enum class Objective { MinBookRatio, MinC4Ratio, MinTriangularRatio, MaxLambdaBookFree };

const char* to_string(Objective o) noexcept;
/// Accepts min_bk_ratio, min_c4_ratio, min_triangular_ratio, max_lambda_Brk_free.
Objective objective_from_string(const std::string& s);

struct SearchConfig {
  std::int64_t m = 0;
  /// Vertex cap; 0 keeps the starting graph's vertex count.
  std::size_t n_max = 0;
  Objective objective = Objective::MinBookRatio;
  /// Forbidden generalized book K_r v I_k for MaxLambdaBookFree.
  int r = 2;
  int k = 1;
  std::size_t steps = 10000;
  double temperature = 0.02;
  /// Geometric cooling factor per step; 0 picks one that cools by 10^4.
  double decay = 0.0;
  std::uint64_t seed = 1;
  int restarts = 1;
  int threads = 1;
  /// Accepted moves between warm refreshes of the Perron estimate.
  std::size_t refresh_every = 200;
  /// Steps between exact certifications of a pending incumbent.
  std::size_t certify_every = 5000;
};

struct SearchRecord {
  Graph best_graph;
  /// bk/sqrt(m), #C4/m^2, triangular/sqrt(m), or lambda^2 / ((1-1/r) 2m).
  double best_value = 0.0;
  double initial_value = 0.0;
  bool minimize = true;
  /// True when the Nosal constraint applies and best_graph is CertifiedYes.
  bool certified = false;
  /// Best value at the end of each epoch (steps / 50 steps each).
  std::vector<double> trace;
  std::size_t accepted = 0;
  /// Restart that produced best_graph.
  int restart = 0;
};

SearchRecord extremal_search(const SearchConfig& cfg);

/// Starting graph for an objective at budget m (exactly m edges).
Graph search_start(Objective objective, std::int64_t m, int r = 2);

/// Objective value of a graph, computed from scratch.
double objective_value(Objective objective, const Graph& g, int r = 2);

struct EdgeSwap {
  Edge remove;
  Edge add;
};

struct LambdaUpdate {
  double lambda = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
  bool cold_start = false;
};

inline constexpr std::size_t kWarmSteps = 30;

/// Perron estimate of `after` from a warm vector: at most kWarmSteps shifted
/// power steps, then a cold computation if the residual is still above 1e-9.
LambdaUpdate incremental_lambda(const Graph& after, std::span<const double> warm);

/// Applies the swap to a copy of g first. remove == add is the identity.
LambdaUpdate incremental_lambda(const Graph& g, const EdgeSwap& move, std::span<const double> warm);

/// True if some copy of K_r v I_k uses the edge {c, d}.
bool book_through_edge(const Graph& g, Vertex c, Vertex d, int r, int k);

}  // namespace nosal
