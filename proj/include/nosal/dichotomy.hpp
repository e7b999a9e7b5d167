#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nosal/graph.hpp"
#include "nosal/spectral.hpp"

namespace nosal {

/// How the upper and lower Perron-entry levels move with t.
///
/// Proof: upper = eps^{2t}, lower = eps^{-2t} / sqrt(m). These only separate
/// once m > eps^{-8t}, so at desk scale the middle band is empty and a vertex
/// meeting both levels is assigned to the upper set.
///
/// DeskScale: upper = m^{-1/4} h_t and lower = m^{-1/4} / h_t with
/// h_t = m^{(1 - t/T)/4}, T = ceil(eps^{-2} + 2). This starts from the
/// same t = 0 levels (1 and 1/sqrt(m)), keeps the bands nested, and closes
/// at t = T, so the pigeonhole step over t = 1..T-1 still applies.
enum class ThresholdSchedule { Proof, DeskScale };

/// FirstEligible: the smallest t whose cross weight is at most eps^2 lambda.
/// BestEligible: among all such t, the candidate with the largest spectral
/// radius (ties to smaller t, then to the bipartite side).
enum class DichotomySelection { FirstEligible, BestEligible };

struct DichotomyOptions {
  ThresholdSchedule schedule = ThresholdSchedule::DeskScale;
  DichotomySelection selection = DichotomySelection::BestEligible;
  SpectralOptions spectral{};
};

enum class DichotomyBranch { Bipartite, SmallDegree };

const char* to_string(DichotomyBranch b) noexcept;

struct PartitionLevel {
  int t = 0;
  double upper = 0.0;
  double lower = 0.0;
  std::size_t a_size = 0;
  std::size_t b_size = 0;
  std::size_t c_size = 0;
  /// Sum of 2 x_i x_j over edges between C_t and C_{t-1} \ C_t.
  double cross_weight = 0.0;
  bool eligible = false;
  /// Spectral radii of G[A_t, B_t] and G[C_t]; filled for eligible levels.
  double lambda_bipartite = 0.0;
  double lambda_middle = 0.0;
  std::size_t middle_max_degree = 0;
  /// |A_t| <= upper^{-2} and |C_t| <= lower^{-2}, from sum x^2 = 1.
  bool size_facts = true;
};

struct DichotomyResult {
  DichotomyBranch branch = DichotomyBranch::Bipartite;
  Graph subgraph;
  /// index_map[v] = original vertex of subgraph vertex v.
  std::vector<Vertex> index_map;
  /// Original vertices of A_t and B_t (Bipartite) or C_t (SmallDegree in a).
  std::vector<Vertex> part_a;
  std::vector<Vertex> part_b;
  double lambda = 0.0;
  double lambda_sub = 0.0;
  /// max((1 - eps) sqrt(m) - N(eps), 0), N(eps) = 3 eps^{-8(eps^{-2} + 2)}.
  double target = 0.0;
  int t_used = 0;
  int t_limit = 0;
  double eps = 0.0;
  std::vector<PartitionLevel> trace;
};

DichotomyResult structural_dichotomy(const Graph& g, double eps, DichotomyOptions opts = {});

/// Delta(G) - (m/2 + m^0.99). Negative means the degree bound holds.
double max_degree_margin(const Graph& g);

struct DegreePowerMargins {
  /// M(G) - (Delta m + 4 m^1.7).
  double excess_over_degree_bound = 0.0;
  /// M(G)/m^2 - 1/2.
  double excess_over_half_square = 0.0;
};

DegreePowerMargins degree_power_margins(const Graph& g);

struct ShiftResult {
  Graph graph;
  /// Vertex of `graph` that is adjacent to every other vertex.
  Vertex hub = 0;
  /// index_map[v] = original vertex.
  std::vector<Vertex> index_map;
  /// x^T A x before and after, for the fixed Perron vector x of the input.
  double rayleigh_before = 0.0;
  double rayleigh_after = 0.0;
};

/// Moves edges onto the vertex with the largest Perron entry until it is
/// universal, then drops isolated vertices. Requires a connected graph.
ShiftResult universal_shift(const Graph& g, SpectralOptions opts = {});

/// Strict checks the stated hypothesis k > m/2 + m^0.99, which no 64-bit m
/// can satisfy together with e = m - k >= 0. Relaxed checks only k > m/2.
enum class HypothesisMode { Strict, Relaxed };

struct MatrixBoundCheck {
  bool holds = false;
  /// Largest eigenvalue of A' + J / sqrt(m).
  double lambda_max = 0.0;
  double bound = 0.0;
};

/// 2 sum_{E'} x_i x_j <= sqrt(m) |x|^2 - (sum x)^2 / sqrt(m) for all x,
/// checked as lambda_max(A' + J/sqrt(m)) <= sqrt(m) with a 1e-8 guard.
MatrixBoundCheck matrix_bound_check(const Graph& gprime, std::int64_t m,
                                     HypothesisMode mode = HypothesisMode::Strict);

}  // namespace nosal
