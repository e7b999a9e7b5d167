#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nosal/graph.hpp"

namespace nosal {

enum class Relation { Equal, Greater, AtLeast, AtMost };

const char* to_string(Relation r) noexcept;

/// A statistic the construction promises. Integer statistics compare
/// exactly; "lambda" compares to 1e-9.
///
/// Statistic names: n, m, bk, c4, kites, triangular_edges, lambda, nosal
/// (1 = certified), cliques_<t>, joint_<r>.
struct Prediction {
  std::string stat;
  Relation rel = Relation::Equal;
  double value = 0.0;
};

struct ConstructionOutput {
  std::string name;
  Graph graph;
  std::vector<Prediction> predicted;
  std::map<std::string, std::int64_t> params;
};

struct PredictionCheck {
  Prediction prediction;
  double observed = 0.0;
  bool pass = false;
};

/// Recomputes every predicted statistic on the generated graph.
std::vector<PredictionCheck> self_check(const ConstructionOutput& c);

/// Floor of the square root, exact for all nonnegative 64-bit inputs.
std::int64_t isqrt(std::int64_t x);

/// K_s with vertex 0 identified with vertex 0 of H. H must be triangle-free.
/// Clique vertices are 0..s-1; the rest of H follows in its own order.
Graph clique_identify(std::size_t s, const Graph& h);

/// K_s plus t pendant edges at vertex 0, s = ceil(sqrt m) + 1, t = m - C(s,2).
ConstructionOutput clique_plus_star(std::int64_t m);

/// Same sizes as clique_plus_star but with a caller-supplied triangle-free H
/// having exactly t edges.
ConstructionOutput clique_plus_graph(std::int64_t m, const Graph& h);

/// K_{s,t} with an extra edge {0, 1} inside the part of size s. Vertices
/// 0..s-1 form that part.
ConstructionOutput k_st_plus(std::int64_t s, std::int64_t t);

/// Blow-up of the triangular prism: the upper triangle's vertices become
/// independent sets of size k+1 (vertices 0..3k+2), the lower ones size k-1.
ConstructionOutput prism_blowup(std::int64_t k);

/// K_2 v ((m-t-1)/2) K_1 with t pendant edges at vertex 0.
ConstructionOutput book_construction(std::int64_t m);

/// K_2 v ((m-1)/2) K_1 for odd m.
ConstructionOutput book_core(std::int64_t m);

Graph complete_multipartite(std::span<const std::size_t> parts);

/// Balanced complete r-partite graph on n vertices; part i holds vertices
/// congruent to i mod r.
Graph turan(std::size_t n, std::size_t r);

/// K_{t,...,t} (r parts, consecutive blocks) plus the edge {0, 1}.
ConstructionOutput kpartite_plus_edge(std::int64_t t, std::int64_t r);

/// K_s plus a pendant star at vertex 0 with s = floor(sqrt(2m(1-1/r))) + 1.
ConstructionOutput clique_joint_tight(std::int64_t m, std::int64_t r);

/// Names accepted by generate().
std::vector<std::string> construction_names();

/// Generic entry point used by the CLI. Required parameter names follow the
/// functions above (m; s,t; k; m; m; n,r; t,r; m,r).
ConstructionOutput generate(std::string_view name,
                            const std::map<std::string, std::int64_t>& params);

}  // namespace nosal
