#include "nosal/spectral.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numeric>

namespace nosal {

using boost::multiprecision::cpp_int;

namespace {

// Vertices reachable from the support of x.
std::vector<Vertex> active_vertices(const Graph& g, std::span<const double> x) {
  std::vector<char> seen(g.n(), 0);
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < g.n(); ++v)
    if (x[v] != 0.0) {
      seen[v] = 1;
      stack.push_back(v);
    }
  std::vector<Vertex> out;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (Vertex w : g.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double norm2(std::span<const double> x, std::span<const Vertex> on) {
  double s = 0.0;
  for (Vertex v : on) s += x[v] * x[v];
  return std::sqrt(s);
}

// The absolute tolerance is the target. A residual that has not halved in
// kStallIters steps sits on the rounding floor of high-degree rows; it is
// accepted once it is within tol * max(1, estimate).
class StopRule {
 public:
  explicit StopRule(double tol) : tol_(tol) {}

  bool done(double res, double estimate, std::size_t it) {
    if (res <= tol_) return true;
    if (res < 0.5 * mark_) {
      mark_ = res;
      mark_it_ = it;
    }
    return it - mark_it_ >= kStallIters && res <= tol_ * std::max(1.0, estimate);
  }

 private:
  static constexpr std::size_t kStallIters = 50;
  double tol_;
  double mark_ = INFINITY;
  std::size_t mark_it_ = 0;
};

ExactRational make_rational(const cpp_int& num, const cpp_int& den) {
  ExactRational r;
  r.numerator = num.str();
  r.denominator = den.str();
  r.approx = den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  return r;
}

}  // namespace

double quadratic_form(const Graph& g, std::span<const double> x) {
  double s = 0.0;
  for (Vertex u = 0; u < g.n(); ++u) {
    if (x[u] == 0.0) continue;
    double acc = 0.0;
    for (Vertex w : g.neighbors(u)) acc += x[w];
    s += x[u] * acc;
  }
  return s;
}

PowerState power_iterate(const Graph& g, std::vector<double> start, double tol,
                         std::size_t max_iters) {
  if (start.size() != g.n()) fail(ErrorKind::Argument, "power_iterate: start has wrong length");
  PowerState st;
  const auto on = active_vertices(g, start);
  st.x = std::move(start);
  if (on.empty()) {
    st.converged = true;
    return st;
  }
  double nrm = norm2(st.x, on);
  for (Vertex v : on) st.x[v] /= nrm;

  std::vector<double> z(g.n(), 0.0);
  StopRule stop(tol);
  for (std::size_t it = 0;; ++it) {
    for (Vertex v : on) {
      double acc = 0.0;
      for (Vertex w : g.neighbors(v)) acc += st.x[w];
      z[v] = acc;
    }
    double mu = 0.0;
    for (Vertex v : on) mu += st.x[v] * z[v];
    double res = 0.0;
    for (Vertex v : on) res = std::max(res, std::abs(z[v] - mu * st.x[v]));
    st.lambda = mu;
    st.residual = res;
    st.iterations = it;
    if (stop.done(res, mu, it)) {
      st.converged = true;
      return st;
    }
    if (it >= max_iters) return st;
    // The shift keeps the most negative eigenvalue from competing with the
    // Perron root (bipartite and near-bipartite graphs).
    const double shift = std::max(mu, 0.0) * 0.5;
    for (Vertex v : on) z[v] += shift * st.x[v];
    nrm = norm2(z, on);
    if (nrm == 0.0) {
      st.converged = true;
      st.lambda = 0.0;
      st.residual = 0.0;
      return st;
    }
    for (Vertex v : on) st.x[v] = z[v] / nrm;
  }
}

RayleighWitness rayleigh_witness(const Graph& g, std::span<const double> x) {
  std::vector<std::int64_t> y(g.n());
  for (Vertex v = 0; v < g.n(); ++v)
    y[v] = static_cast<std::int64_t>(std::llround(x[v] * static_cast<double>(kWitnessScale)));
  cpp_int yy = 0;
  cpp_int yay = 0;
  for (Vertex u = 0; u < g.n(); ++u) {
    if (y[u] == 0) continue;
    yy += cpp_int(y[u]) * y[u];
    __int128 acc = 0;
    for (Vertex w : g.neighbors(u))
      if (w > u) acc += static_cast<__int128>(y[u]) * y[w];
    // Split the 128-bit accumulator into two 64-bit halves for cpp_int.
    const bool neg = acc < 0;
    unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-acc) : static_cast<unsigned __int128>(acc);
    cpp_int part = cpp_int(static_cast<std::uint64_t>(mag >> 64));
    part <<= 64;
    part += static_cast<std::uint64_t>(mag);
    yay += neg ? cpp_int(-part) : part;
  }
  yay *= 2;
  RayleighWitness w;
  w.quotient = make_rational(yay, yy == 0 ? cpp_int(1) : yy);
  w.exceeds_sqrt_m = yay > 0 && yay * yay > cpp_int(g.m()) * yy * yy;
  return w;
}

SpectralCertificate spectral_radius(const Graph& g, SpectralOptions opts) {
  if (g.n() == 0) fail(ErrorKind::Argument, "spectral_radius: empty graph");
  if (!(opts.tol > 0.0)) fail(ErrorKind::Argument, "spectral_radius: tol must be positive");

  SpectralCertificate best;
  bool have = false;
  const auto degs = g.degrees();
  for (auto& comp : components(g)) {
    std::vector<double> start(g.n(), 0.0);
    if (comp.size() == 1) {
      if (have) continue;
      start[comp.front()] = 1.0;
      best.lambda = 0.0;
      best.perron = std::move(start);
      best.residual = 0.0;
      best.component = comp;
      have = true;
      continue;
    }
    for (Vertex v : comp) start[v] = static_cast<double>(degs[v]);
    PowerState st = power_iterate(g, std::move(start), opts.tol, opts.max_iters);
    if (!st.converged) {
      SpectralCertificate partial;
      partial.lambda = st.lambda;
      partial.perron = std::move(st.x);
      partial.residual = st.residual;
      partial.iterations = st.iterations;
      partial.component = comp;
      throw ConvergenceError("spectral_radius: residual " + std::to_string(partial.residual) +
                                 " above tolerance after " + std::to_string(st.iterations) +
                                 " iterations",
                             std::move(partial));
    }
    if (!have || st.lambda > best.lambda) {
      best.lambda = st.lambda;
      best.perron = std::move(st.x);
      best.residual = st.residual;
      best.iterations = st.iterations;
      best.component = std::move(comp);
      have = true;
    }
  }
  for (double& v : best.perron) v = std::max(v, 0.0);
  best.rational_lower_bound = rayleigh_witness(g, best.perron).quotient;
  return best;
}

const char* to_string(NosalKind k) noexcept {
  switch (k) {
    case NosalKind::CertifiedYes: return "CertifiedYes";
    case NosalKind::NumericallyNo: return "NumericallyNo";
    case NosalKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

NosalVerdict is_nosal(const Graph& g, const SpectralCertificate& cert) {
  if (g.m() == 0) fail(ErrorKind::Argument, "is_nosal: graph has no edges");
  NosalVerdict v;
  const double root = std::sqrt(static_cast<double>(g.m()));
  v.lambda = cert.lambda;
  v.residual = cert.residual;
  v.margin = cert.lambda - root;
  auto w = rayleigh_witness(g, cert.perron);
  if (w.exceeds_sqrt_m) {
    v.kind = NosalKind::CertifiedYes;
    v.witness = std::move(w.quotient);
  } else if (cert.lambda + cert.residual * static_cast<double>(g.n()) < root) {
    v.kind = NosalKind::NumericallyNo;
  } else {
    v.kind = NosalKind::Inconclusive;
  }
  return v;
}

NosalVerdict is_nosal(const Graph& g, SpectralOptions opts) {
  if (g.m() == 0) fail(ErrorKind::Argument, "is_nosal: graph has no edges");
  return is_nosal(g, spectral_radius(g, opts));
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n) fail(ErrorKind::Argument, "jacobi_eigenvalues: size mismatch");
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  double total = 0.0;
  for (double v : a) total += v * v;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off <= 1e-30 * std::max(total, 1.0)) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        at(p, p) -= t * apq;
        at(q, q) += t * apq;
        at(p, q) = at(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = at(r, p);
          const double arq = at(r, q);
          at(r, p) = at(p, r) = arp - s * (arq + tau * arp);
          at(r, q) = at(q, r) = arq + s * (arp - tau * arq);
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

std::vector<double> full_spectrum(const Graph& g, std::size_t cap) {
  const std::size_t n = g.n();
  if (n > cap)
    fail(ErrorKind::Capacity, "full_spectrum: n=" + std::to_string(n) + " exceeds dense cap " +
                                  std::to_string(cap) + "; use walk_traces");
  std::vector<double> a(n * n, 0.0);
  for (const Edge& e : g.edges()) a[e.u * n + e.v] = a[e.v * n + e.u] = 1.0;
  return jacobi_eigenvalues(std::move(a), n);
}

WalkTraces walk_traces(const Graph& g) {
  WalkTraces t;
  t.tr2 = 2 * static_cast<std::int64_t>(g.m());
  std::int64_t codeg_sum = 0;
  for (const Edge& e : g.edges()) codeg_sum += static_cast<std::int64_t>(g.codegree(e.u, e.v));
  t.tr3 = 2 * codeg_sum;

  std::vector<std::int64_t> count(g.n(), 0);
  std::vector<Vertex> touched;
  for (Vertex u = 0; u < g.n(); ++u) {
    const auto du = static_cast<std::int64_t>(g.degree(u));
    t.tr4 += du * du;
    for (Vertex x : g.neighbors(u))
      for (Vertex w : g.neighbors(x)) {
        if (w == u) continue;
        if (count[w]++ == 0) touched.push_back(w);
      }
    for (Vertex w : touched) {
      t.tr4 += count[w] * count[w];
      count[w] = 0;
    }
    touched.clear();
  }
  return t;
}

double signless_q(const Graph& g, double tol, std::size_t max_iters) {
  if (g.n() == 0) fail(ErrorKind::Argument, "signless_q: empty graph");
  double best = 0.0;
  std::vector<double> x(g.n()), z(g.n());
  for (const auto& comp : components(g)) {
    if (comp.size() == 1) continue;
    for (Vertex v : comp) x[v] = 1.0 + static_cast<double>(g.degree(v));
    double nrm = norm2(x, comp);
    for (Vertex v : comp) x[v] /= nrm;
    bool converged = false;
    double mu = 0.0;
    StopRule stop(tol);
    for (std::size_t it = 0; it <= max_iters; ++it) {
      for (Vertex v : comp) {
        double acc = static_cast<double>(g.degree(v)) * x[v];
        for (Vertex w : g.neighbors(v)) acc += x[w];
        z[v] = acc;
      }
      mu = 0.0;
      for (Vertex v : comp) mu += x[v] * z[v];
      double res = 0.0;
      for (Vertex v : comp) res = std::max(res, std::abs(z[v] - mu * x[v]));
      if (stop.done(res, mu, it)) {
        converged = true;
        break;
      }
      nrm = norm2(z, comp);
      for (Vertex v : comp) x[v] = z[v] / nrm;
    }
    if (!converged) fail(ErrorKind::Convergence, "signless_q: no convergence");
    best = std::max(best, mu);
  }
  return best;
}

}  // namespace nosal
