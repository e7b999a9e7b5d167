#include "nosal/dichotomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nosal/counting.hpp"
#include "nosal/error.hpp"

namespace nosal {

const char* to_string(DichotomyBranch b) noexcept {
  return b == DichotomyBranch::Bipartite ? "bipartite" : "small_degree";
}

namespace {

struct Bands {
  std::vector<Vertex> a, b, c;
};

Bands split(const std::vector<double>& x, double upper, double lower) {
  Bands s;
  for (Vertex v = 0; v < x.size(); ++v) {
    if (x[v] >= upper) s.a.push_back(v);
    else if (x[v] <= lower) s.b.push_back(v);
    else s.c.push_back(v);
  }
  return s;
}

double radius(const Graph& g, const SpectralOptions& opts) {
  return g.m() == 0 ? 0.0 : spectral_radius(g, opts).lambda;
}

}  // namespace

DichotomyResult structural_dichotomy(const Graph& g, double eps, DichotomyOptions opts) {
  if (!(eps > 0.0 && eps <= 0.1)) fail(ErrorKind::Argument, "eps must lie in (0, 0.1]");
  if (g.m() == 0) fail(ErrorKind::Argument, "structural_dichotomy needs at least one edge");

  const auto cert = spectral_radius(g, opts.spectral);
  const auto& x = cert.perron;
  const double m = static_cast<double>(g.m());
  const int T = static_cast<int>(std::ceil(1.0 / (eps * eps) + 2.0));

  DichotomyResult res;
  res.eps = eps;
  res.lambda = cert.lambda;
  res.t_limit = T;
  const double n_eps = 3.0 * std::pow(eps, -8.0 * (1.0 / (eps * eps) + 2.0));
  res.target = std::max((1.0 - eps) * std::sqrt(m) - n_eps, 0.0);

  auto levels = [&](int t) {
    if (opts.schedule == ThresholdSchedule::Proof)
      return std::pair{std::pow(eps, 2.0 * t), std::pow(eps, -2.0 * t) / std::sqrt(m)};
    const double base = std::pow(m, -0.25);
    const double h = std::pow(m, 0.25 * (1.0 - static_cast<double>(t) / T));
    return std::pair{base * h, base / h};
  };

  auto [u0, l0] = levels(0);
  Bands prev = split(x, u0, l0);

  struct Candidate {
    double lambda;
    int t;
    DichotomyBranch branch;
    Bands bands;
  };
  std::optional<Candidate> best;
  std::vector<char> in_c(g.n(), 0), in_prev_only(g.n(), 0);
  // Consecutive levels often give identical bands; reuse their radii.
  std::optional<Bands> cached;
  double cached_bip = 0.0, cached_mid = 0.0;
  std::size_t cached_deg = 0;

  for (int t = 1; t < T; ++t) {
    auto [upper, lower] = levels(t);
    Bands cur = split(x, upper, lower);
    PartitionLevel lvl;
    lvl.t = t;
    lvl.upper = upper;
    lvl.lower = lower;
    lvl.a_size = cur.a.size();
    lvl.b_size = cur.b.size();
    lvl.c_size = cur.c.size();
    lvl.size_facts = static_cast<double>(cur.a.size()) <= 1.0 / (upper * upper) + 1e-9 &&
                     static_cast<double>(cur.c.size()) <= 1.0 / (lower * lower) + 1e-9;

    for (Vertex v : cur.c) in_c[v] = 1;
    for (Vertex v : prev.c)
      if (!in_c[v]) in_prev_only[v] = 1;
    double cross = 0.0;
    for (Vertex v : cur.c)
      for (Vertex w : g.neighbors(v))
        if (in_prev_only[w]) cross += 2.0 * x[v] * x[w];
    for (Vertex v : cur.c) in_c[v] = 0;
    for (Vertex v : prev.c) in_prev_only[v] = 0;
    lvl.cross_weight = cross;
    lvl.eligible = cross <= eps * eps * cert.lambda;

    const bool evaluate =
        lvl.eligible && (opts.selection == DichotomySelection::BestEligible || !best);
    if (evaluate) {
      if (!cached || cached->a != cur.a || cached->b != cur.b) {
        auto bip = bipartite_induced(g, cur.a, cur.b);
        auto mid = induced(g, cur.c);
        cached_bip = radius(bip.graph, opts.spectral);
        cached_mid = radius(mid.graph, opts.spectral);
        cached_deg = mid.graph.max_degree();
        cached = cur;
      }
      lvl.lambda_bipartite = cached_bip;
      lvl.lambda_middle = cached_mid;
      lvl.middle_max_degree = cached_deg;
      const bool middle_ok = static_cast<double>(cached_deg) <= eps * m;
      Candidate bip_c{cached_bip, t, DichotomyBranch::Bipartite, cur};
      std::optional<Candidate> pick = bip_c;
      if (middle_ok && cached_mid > cached_bip)
        pick = Candidate{cached_mid, t, DichotomyBranch::SmallDegree, cur};
      if (!best || pick->lambda > best->lambda) best = pick;
    }
    res.trace.push_back(lvl);
    prev = std::move(cur);
  }
  if (!best) fail(ErrorKind::Infeasible, "no level met the cross-weight condition");

  res.t_used = best->t;
  res.branch = best->branch;
  res.lambda_sub = best->lambda;
  if (best->branch == DichotomyBranch::Bipartite) {
    auto sub = bipartite_induced(g, best->bands.a, best->bands.b);
    res.subgraph = std::move(sub.graph);
    res.index_map = std::move(sub.index_map);
    res.part_a = best->bands.a;
    res.part_b = best->bands.b;
  } else {
    auto sub = induced(g, best->bands.c);
    res.subgraph = std::move(sub.graph);
    res.index_map = std::move(sub.index_map);
    res.part_a = best->bands.c;
  }
  return res;
}

double max_degree_margin(const Graph& g) {
  const double m = static_cast<double>(g.m());
  return static_cast<double>(g.max_degree()) - (m / 2.0 + std::pow(m, 0.99));
}

DegreePowerMargins degree_power_margins(const Graph& g) {
  const double m = static_cast<double>(g.m());
  const double M = static_cast<double>(degree_power(g));
  DegreePowerMargins out;
  out.excess_over_degree_bound = M - (static_cast<double>(g.max_degree()) * m + 4.0 * std::pow(m, 1.7));
  out.excess_over_half_square = m > 0 ? M / (m * m) - 0.5 : -0.5;
  return out;
}

ShiftResult universal_shift(const Graph& g, SpectralOptions opts) {
  if (g.n() == 0 || components(g).size() != 1)
    fail(ErrorKind::Precondition, "universal_shift needs a connected graph");
  const auto cert = spectral_radius(g, opts);
  const auto& x = cert.perron;
  const Vertex hub = static_cast<Vertex>(std::max_element(x.begin(), x.end()) - x.begin());

  ShiftResult out;
  out.rayleigh_before = quadratic_form(g, x);
  Graph h = g;
  // Each swap raises deg(hub) by one, so the loop ends.
  bool moved = true;
  while (moved) {
    moved = false;
    for (const Edge& e : h.edges()) {
      if (e.u == hub || e.v == hub) continue;
      Vertex j = e.u;
      if (h.has_edge(hub, j)) j = e.v;
      if (h.has_edge(hub, j)) continue;
      // x^T A x changes by 2 x_j (x_hub - x_k) >= 0.
      h.remove_edge(e.u, e.v);
      h.add_edge(hub, j);
      moved = true;
    }
  }
  out.rayleigh_after = quadratic_form(h, x);

  std::vector<Vertex> keep;
  for (Vertex v = 0; v < h.n(); ++v)
    if (h.degree(v) > 0 || v == hub) keep.push_back(v);
  auto sub = induced(h, keep);
  out.graph = std::move(sub.graph);
  out.index_map = std::move(sub.index_map);
  out.hub = static_cast<Vertex>(std::lower_bound(out.index_map.begin(), out.index_map.end(), hub) -
                                out.index_map.begin());
  return out;
}

MatrixBoundCheck matrix_bound_check(const Graph& gprime, std::int64_t m, HypothesisMode mode) {
  const auto k = static_cast<double>(gprime.n());
  const auto md = static_cast<double>(m);
  if (m < 1) fail(ErrorKind::Precondition, "m must be positive");
  const bool size_ok = mode == HypothesisMode::Strict ? k > md / 2.0 + std::pow(md, 0.99) : k > md / 2.0;
  if (!size_ok)
    fail(ErrorKind::Precondition, mode == HypothesisMode::Strict
                                      ? "hypothesis k > m/2 + m^0.99 does not hold"
                                      : "hypothesis k > m/2 does not hold");
  if (static_cast<std::int64_t>(gprime.m()) != m - static_cast<std::int64_t>(gprime.n()))
    fail(ErrorKind::Precondition, "hypothesis e(G') = m - k does not hold");

  // A' + J/sqrt(m) is entrywise positive, so power iteration from the all-ones
  // vector converges to its Perron root. The identity shift damps any
  // negative eigenvalue of similar magnitude.
  const double root = std::sqrt(md);
  const std::size_t n = gprime.n();
  std::vector<double> v(n, 1.0 / std::sqrt(k)), y(n);
  double lam = 0.0;
  for (int it = 0; it < 100000; ++it) {
    double s = 0.0;
    for (double a : v) s += a;
    for (Vertex i = 0; i < n; ++i) {
      double acc = s / root + v[i];
      for (Vertex j : gprime.neighbors(i)) acc += v[j];
      y[i] = acc;
    }
    double dot = 0.0, norm = 0.0;
    for (Vertex i = 0; i < n; ++i) {
      dot += v[i] * y[i];
      norm += y[i] * y[i];
    }
    const double next = dot - 1.0;
    norm = std::sqrt(norm);
    double diff = 0.0;
    for (Vertex i = 0; i < n; ++i) {
      const double nv = y[i] / norm;
      diff = std::max(diff, std::abs(nv - v[i]));
      v[i] = nv;
    }
    const bool done = std::abs(next - lam) < 1e-13 * std::max(1.0, next) && diff < 1e-11;
    lam = next;
    if (done) break;
  }
  MatrixBoundCheck out;
  out.lambda_max = lam;
  out.bound = root;
  out.holds = lam <= root + 1e-8;
  return out;
}

}  // namespace nosal
