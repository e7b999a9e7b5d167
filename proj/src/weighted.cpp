#include "nosal/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nosal/counting.hpp"
#include "nosal/error.hpp"

namespace nosal {

WeightedGraph::WeightedGraph(Graph base, std::vector<double> w)
    : base_(std::move(base)), w_(std::move(w)) {
  if (w_.size() != base_.n())
    fail(ErrorKind::Argument, "vertex weight count does not match the graph");
  p_.resize(base_.n());
  for (Vertex v = 0; v < base_.n(); ++v) p_[v].assign(base_.degree(v), 0.0);
}

std::size_t WeightedGraph::slot(Vertex u, Vertex v) const {
  base_.check_vertex(u);
  base_.check_vertex(v);
  auto nb = base_.neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v)
    fail(ErrorKind::Index, "{" + std::to_string(u) + ", " + std::to_string(v) + "} is not an edge");
  return static_cast<std::size_t>(it - nb.begin());
}

double WeightedGraph::p(Vertex u, Vertex v) const { return p_[u][slot(u, v)]; }

void WeightedGraph::set_p(Vertex u, Vertex v, double value) {
  p_[u][slot(u, v)] = value;
  p_[v][slot(v, u)] = value;
}

void WeightedGraph::validate() const {
  double sum = 0.0;
  for (double x : w_) {
    if (!(x >= 0.0)) fail(ErrorKind::Precondition, "vertex weights must be nonnegative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    fail(ErrorKind::Precondition, "vertex weights must sum to 1");
  for (const auto& row : p_)
    for (double x : row)
      if (!(x >= 0.0 && x <= 1.0)) fail(ErrorKind::Precondition, "edge weights must lie in [0, 1]");
}

WeightedGraph proof_weights_joint(const Graph& g, const SpectralCertificate& cert, int r) {
  if (r < 2) fail(ErrorKind::Argument, "proof weights need r >= 2");
  if (g.m() == 0) fail(ErrorKind::Degenerate, "proof weights need at least one edge");
  if (cert.perron.size() != g.n()) fail(ErrorKind::Argument, "certificate does not match the graph");
  const auto& x = cert.perron;
  std::vector<char> on(g.n(), 0);
  for (Vertex v : cert.component) {
    if (!(x[v] > 0.0))
      fail(ErrorKind::Degenerate, "Perron entry of vertex " + std::to_string(v) + " is not positive");
    on[v] = 1;
  }
  std::vector<double> w(g.n(), 0.0);
  double sum = 0.0;
  for (Vertex v : cert.component) sum += x[v] * x[v];
  for (Vertex v : cert.component) w[v] = x[v] * x[v] / sum;

  const double m = static_cast<double>(g.m());
  const double c = std::sqrt(2.0 * (r - 1) / (r * m));
  const double d = (r - 1) / (2.0 * r * m);
  const double norm = std::sqrt(sum);
  WeightedGraph wg(g, std::move(w));
  for (const Edge& e : g.edges()) {
    if (!on[e.u] || !on[e.v]) continue;
    const double xi = x[e.u] / norm;
    const double xj = x[e.v] / norm;
    const double num = c * xi * xj - d;
    if (num <= 0.0) continue;
    // (x_i x_j - c/2)^2 >= 0 keeps this at most 1 up to rounding.
    wg.set_p(e.u, e.v, std::clamp(num / (xi * xi * xj * xj), 0.0, 1.0));
  }
  return wg;
}

WeightedGraph proof_weights_book(const Graph& g, const SpectralCertificate& cert) {
  return proof_weights_joint(g, cert, 2);
}

double weighted_edge_density(const WeightedGraph& wg) {
  const Graph& g = wg.base();
  long double s = 0.0L;
  for (Vertex u = 0; u < g.n(); ++u) {
    auto nb = g.neighbors(u);
    for (std::size_t k = 0; k < nb.size(); ++k)
      if (nb[k] > u) s += static_cast<long double>(wg.p_slot(u, k)) * wg.w(u) * wg.w(nb[k]);
  }
  return static_cast<double>(s);
}

namespace {

double book_value(const WeightedGraph& wg, const Edge& e) {
  const Graph& g = wg.base();
  auto a = g.neighbors(e.u);
  auto b = g.neighbors(e.v);
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else {
      s += wg.p_slot(e.u, i) * wg.p_slot(e.v, j) * wg.w(a[i]);
      ++i;
      ++j;
    }
  }
  return s;
}

template <class Objective>
WeightedEdge best_edge(const WeightedGraph& wg, Objective value) {
  std::optional<WeightedEdge> best;
  for (const Edge& e : wg.base().edges()) {
    if (wg.p(e.u, e.v) <= 0.0) continue;
    const double v = value(e);
    if (!best || v > best->value) best = WeightedEdge{e, v};
  }
  if (!best) fail(ErrorKind::NoWitness, "every edge weight is zero");
  return *best;
}

}  // namespace

WeightedEdge best_weighted_book_edge(const WeightedGraph& wg) {
  return best_edge(wg, [&](const Edge& e) { return book_value(wg, e); });
}

double weighted_joint_value(const WeightedGraph& wg, Edge e, int r) {
  if (r < 2) fail(ErrorKind::Argument, "joint objective needs r >= 2");
  if (r == 2) return book_value(wg, e);
  const Graph& g = wg.base();
  auto common = g.common_neighbors(e.u, e.v);
  if (static_cast<int>(common.size()) < r - 1) return 0.0;
  double total = 0.0;
  for_each_clique(g, r - 1, common, [&](std::span<const Vertex> q, std::span<const Vertex>) {
    double prod = 1.0;
    for (std::size_t a = 0; a < q.size() && prod > 0.0; ++a) {
      prod *= wg.w(q[a]) * wg.p(e.u, q[a]) * wg.p(e.v, q[a]);
      for (std::size_t b = a + 1; b < q.size(); ++b) prod *= wg.p(q[a], q[b]);
    }
    total += prod;
  });
  return total;
}

WeightedEdge best_weighted_joint_edge(const WeightedGraph& wg, int r) {
  return best_edge(wg, [&](const Edge& e) { return weighted_joint_value(wg, e, r); });
}

ProofBookWitness book_witness_from_proof(const Graph& g, const SpectralCertificate& cert) {
  if (is_nosal(g, cert).kind != NosalKind::CertifiedYes)
    fail(ErrorKind::Precondition, "book_witness_from_proof needs a certified Nosal graph");
  auto wg = proof_weights_book(g, cert);
  ProofBookWitness out;
  out.density = weighted_edge_density(wg);
  auto best = best_weighted_book_edge(wg);
  out.edge = best.edge;
  out.lemma_value = best.value;
  const auto& x = cert.perron;
  out.apex = x[best.edge.u] >= x[best.edge.v] ? best.edge.u : best.edge.v;
  for (Vertex k : g.common_neighbors(best.edge.u, best.edge.v))
    if (wg.p(out.apex, k) > 0.0) out.book.push_back(k);
  out.floor = std::sqrt(static_cast<double>(g.m())) / 144.0;
  out.meets_floor = static_cast<double>(out.book.size()) >= out.floor;
  return out;
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; portable across standard
// libraries, unlike the distribution classes.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Graph random_blowup(const WeightedGraph& wg, std::size_t N, std::uint64_t seed) {
  if (N < 1) fail(ErrorKind::Argument, "blowup size N must be >= 1");
  const Graph& g = wg.base();
  std::vector<std::size_t> start(g.n() + 1, 0);
  for (Vertex v = 0; v < g.n(); ++v)
    start[v + 1] = start[v] + static_cast<std::size_t>(std::floor(wg.w(v) * static_cast<double>(N)));
  Graph out(start[g.n()]);
  std::mt19937_64 rng(seed);
  for (const Edge& e : g.edges()) {
    const double p = wg.p(e.u, e.v);
    if (p <= 0.0) continue;
    for (std::size_t a = start[e.u]; a < start[e.u + 1]; ++a)
      for (std::size_t b = start[e.v]; b < start[e.v + 1]; ++b)
        if (p >= 1.0 || unit(rng) < p) out.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  return out;
}

double blowup_expected_edges(const WeightedGraph& wg, std::size_t N) {
  const Graph& g = wg.base();
  double s = 0.0;
  for (const Edge& e : g.edges())
    s += wg.p(e.u, e.v) * std::floor(wg.w(e.u) * static_cast<double>(N)) *
         std::floor(wg.w(e.v) * static_cast<double>(N));
  return s;
}

}  // namespace nosal
