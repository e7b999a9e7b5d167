#include "nosal/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <unordered_map>

#include "nosal/constructions.hpp"
#include "nosal/counting.hpp"
#include "nosal/error.hpp"
#include "nosal/spectral.hpp"

namespace nosal {

const char* to_string(Objective o) noexcept {
  switch (o) {
    case Objective::MinBookRatio: return "min_bk_ratio";
    case Objective::MinC4Ratio: return "min_c4_ratio";
    case Objective::MinTriangularRatio: return "min_triangular_ratio";
    case Objective::MaxLambdaBookFree: return "max_lambda_Brk_free";
  }
  return "?";
}

Objective objective_from_string(const std::string& s) {
  for (auto o : {Objective::MinBookRatio, Objective::MinC4Ratio, Objective::MinTriangularRatio,
                 Objective::MaxLambdaBookFree})
    if (s == to_string(o)) return o;
  fail(ErrorKind::Argument, "unknown objective '" + s + "'");
}

namespace {

std::size_t count_intersection(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else {
      ++c;
      ++i;
      ++j;
    }
  }
  return c;
}

bool nosal_certified(const Graph& g) {
  return g.m() > 0 && is_nosal(g).kind == NosalKind::CertifiedYes;
}

Graph prism_start(std::int64_t m) {
  std::int64_t k = isqrt((m - 3) / 9);
  if (k < 1) fail(ErrorKind::Infeasible, "budget too small for a prism start");
  Graph g = prism_blowup(k).graph;
  // Extra edges go inside the vertex classes; the edge density only grows,
  // so m > n^2/4 and hence lambda >= 2m/n > sqrt(m) survive.
  for (Vertex u = 0; u < g.n() && static_cast<std::int64_t>(g.m()) < m; ++u)
    for (Vertex v = u + 1; v < g.n() && static_cast<std::int64_t>(g.m()) < m; ++v)
      if (!g.has_edge(u, v)) g.add_edge(u, v);
  return g;
}

// Smallest t (fewest triangular edges, 2t + 1) that still certifies. The
// bare K_{s,t}^+ needs s < 4(t + 1); the leftover edges help only a little.
Graph kst_start(std::int64_t m) {
  for (std::int64_t t = 1; 2 * t + 1 <= m; ++t) {
    const std::int64_t s = (m - 1) / t;
    const std::int64_t rest = m - 1 - s * t;
    if (s < 2 || rest > s - 2) continue;
    if (s >= 4 * (t + 1) + 8) continue;
    Graph g = k_st_plus(s, t).graph;
    if (rest > 0) {
      // One more vertex joined to S-vertices 2, 3, ... adds no triangle.
      Graph h(g.n() + 1);
      for (const Edge& e : g.edges()) h.add_edge(e.u, e.v);
      for (std::int64_t i = 0; i < rest; ++i) h.add_edge(static_cast<Vertex>(2 + i), static_cast<Vertex>(g.n()));
      g = std::move(h);
    }
    if (nosal_certified(g)) return g;
  }
  fail(ErrorKind::Infeasible, "no certified K_{s,t}^+ start at this budget");
}

Graph multipartite_start(std::int64_t m, int r) {
  std::int64_t t = 1;
  while ((r * (r - 1) / 2) * (t + 1) * (t + 1) <= m) ++t;
  std::vector<std::size_t> parts(static_cast<std::size_t>(r), static_cast<std::size_t>(t));
  Graph core = complete_multipartite(parts);
  const auto rest = static_cast<std::size_t>(m - static_cast<std::int64_t>(core.m()));
  // The remaining edges form a path on fresh vertices: no triangles, no K_{r+1}.
  Graph g(core.n() + (rest > 0 ? rest + 1 : 0));
  for (const Edge& e : core.edges()) g.add_edge(e.u, e.v);
  for (std::size_t i = 0; i < rest; ++i)
    g.add_edge(static_cast<Vertex>(core.n() + i), static_cast<Vertex>(core.n() + i + 1));
  return g;
}

}  // namespace

Graph search_start(Objective objective, std::int64_t m, int r) {
  if (m < 1) fail(ErrorKind::Argument, "edge budget must be positive");
  switch (objective) {
    case Objective::MinBookRatio: return prism_start(m);
    case Objective::MinC4Ratio: return book_construction(m).graph;
    case Objective::MinTriangularRatio: return kst_start(m);
    case Objective::MaxLambdaBookFree: return multipartite_start(m, r);
  }
  fail(ErrorKind::Argument, "unknown objective");
}

double objective_value(Objective objective, const Graph& g, int r) {
  const double m = static_cast<double>(g.m());
  switch (objective) {
    case Objective::MinBookRatio: return static_cast<double>(book_size(g).size) / std::sqrt(m);
    case Objective::MinC4Ratio: return static_cast<double>(c4_count(g, C4Method::Codegree).value) / (m * m);
    case Objective::MinTriangularRatio: return static_cast<double>(triangular_edges(g)) / std::sqrt(m);
    case Objective::MaxLambdaBookFree: {
      const double l = spectral_radius(g).lambda;
      return l * l / ((1.0 - 1.0 / r) * 2.0 * m);
    }
  }
  return 0.0;
}

LambdaUpdate incremental_lambda(const Graph& after, std::span<const double> warm) {
  LambdaUpdate out;
  if (after.m() == 0) {
    out.x.assign(after.n(), 0.0);
    if (after.n() > 0) out.x[0] = 1.0;
    return out;
  }
  std::vector<double> start(warm.begin(), warm.end());
  // Keep every vertex in play: a swap may attach a vertex the warm vector
  // ignores.
  for (auto& v : start) v = std::max(v, 1e-9);
  auto st = power_iterate(after, std::move(start), 1e-9, kWarmSteps);
  out.iterations = st.iterations;
  if (st.converged) {
    out.lambda = st.lambda;
    out.x = std::move(st.x);
    return out;
  }
  auto cert = spectral_radius(after);
  out.lambda = cert.lambda;
  out.x = std::move(cert.perron);
  out.iterations += cert.iterations;
  out.cold_start = true;
  return out;
}

LambdaUpdate incremental_lambda(const Graph& g, const EdgeSwap& move, std::span<const double> warm) {
  Graph after = g;
  if (!(move.remove == move.add)) {
    if (!after.remove_edge(move.remove.u, move.remove.v))
      fail(ErrorKind::Argument, "swap removes a missing edge");
    if (!after.add_edge(move.add.u, move.add.v)) fail(ErrorKind::Argument, "swap adds an existing edge");
  }
  return incremental_lambda(after, warm);
}

bool book_through_edge(const Graph& g, Vertex c, Vertex d, int r, int k) {
  if (r < 2 || k < 1) fail(ErrorKind::Argument, "book_through_edge needs r >= 2 and k >= 1");
  const auto common = g.common_neighbors(c, d);
  const auto kk = static_cast<std::size_t>(k);
  // Both endpoints in the clique: an (r-2)-clique Q inside N(c) and N(d).
  if (r == 2) {
    if (common.size() >= kk) return true;
  }
  if (common.empty()) return false;
  bool found = false;
  auto nc = g.neighbors(c);
  auto nd = g.neighbors(d);
  if (r > 2) {
    for_each_clique(g, r - 2, common, [&](std::span<const Vertex>, std::span<const Vertex> cq) {
      if (found) return;
      std::vector<Vertex> tmp;
      std::set_intersection(cq.begin(), cq.end(), nc.begin(), nc.end(), std::back_inserter(tmp));
      if (count_intersection(tmp, nd) >= kk) found = true;
    });
    if (found) return true;
  }
  // One endpoint in the clique, the other among the independent vertices:
  // an (r-1)-clique Q inside N(c) and N(d) joined to c (or to d).
  for_each_clique(g, r - 1, common, [&](std::span<const Vertex>, std::span<const Vertex> cq) {
    if (found) return;
    if (count_intersection(cq, nc) >= kk || count_intersection(cq, nd) >= kk) found = true;
  });
  return found;
}

namespace {

std::uint64_t key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// One annealing chain. Maintains codegrees of all edges (for bk and
// triangular edges), the 4-cycle count, the edge list and a Rayleigh
// quotient against a warm Perron estimate.
class Chain {
 public:
  Chain(const SearchConfig& cfg, const Graph& start, std::uint64_t seed)
      : cfg_(cfg), rng_(seed), g_(start), m_(static_cast<double>(cfg.m)) {
    if (cfg_.n_max > g_.n()) {
      Graph h(cfg_.n_max);
      for (const Edge& e : g_.edges()) h.add_edge(e.u, e.v);
      g_ = std::move(h);
    }
    for (const Edge& e : g_.edges()) {
      index_[key(e.u, e.v)] = edges_.size();
      edges_.push_back(e);
      const auto c = g_.codegree(e.u, e.v);
      codeg_[key(e.u, e.v)] = static_cast<std::uint32_t>(c);
      hist_add(c);
    }
    if (cfg_.objective == Objective::MinC4Ratio) c4_ = c4_count(g_, C4Method::Codegree).value;
    auto cert = spectral_radius(g_);
    x_ = std::move(cert.perron);
    rayleigh_ = quadratic_form(g_, x_);
  }

  SearchRecord run() {
    SearchRecord rec;
    rec.minimize = cfg_.objective != Objective::MaxLambdaBookFree;
    const bool constrained = rec.minimize;
    double energy = current_energy();
    rec.initial_value = objective_value(cfg_.objective, g_, cfg_.r);

    Graph best = g_;
    double best_energy = energy;
    std::optional<Graph> pending;
    double pending_energy = energy;
    rec.certified = constrained ? nosal_certified(g_) : false;
    if (constrained && !rec.certified) fail(ErrorKind::Infeasible, "start graph is not certified Nosal");

    const double decay = cfg_.decay > 0.0
                             ? cfg_.decay
                             : std::pow(1e-4, 1.0 / static_cast<double>(std::max<std::size_t>(cfg_.steps, 1)));
    double temp = cfg_.temperature;
    const std::size_t epoch = std::max<std::size_t>(1, cfg_.steps / 50);
    std::size_t since_refresh = 0;
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto settle_pending = [&] {
      if (!pending) return;
      if (!constrained || nosal_certified(*pending)) {
        best = std::move(*pending);
        best_energy = pending_energy;
      }
      pending.reset();
    };

    for (std::size_t step = 1; step <= cfg_.steps; ++step) {
      temp *= decay;
      auto mv = propose();
      if (mv) {
        const auto [a, b] = mv->remove;
        const auto [c, d] = mv->add;
        const double gain = 2.0 * (x_[c] * x_[d] - x_[a] * x_[b]);
        bool feasible = true;
        if (constrained) feasible = rayleigh_ + gain > std::sqrt(m_) + 1e-7;
        if (feasible) {
          apply_remove(a, b);
          apply_add(c, d);
          if (cfg_.objective == Objective::MaxLambdaBookFree &&
              book_through_edge(g_, c, d, cfg_.r, cfg_.k)) {
            feasible = false;
          }
          const double next = feasible ? energy_after(gain) : 0.0;
          const double delta = next - energy;
          if (feasible && (delta <= 0.0 || unit(rng_) < std::exp(-delta / std::max(temp, 1e-300)))) {
            energy = next;
            rayleigh_ += gain;
            ++rec.accepted;
            if (++since_refresh >= cfg_.refresh_every) {
              refresh();
              energy = current_energy();
              since_refresh = 0;
            }
            if (energy < (pending ? pending_energy : best_energy) - 1e-15) {
              pending = g_;
              pending_energy = energy;
            }
          } else {
            apply_remove(c, d);
            apply_add(a, b);
          }
        }
      }
      if (step % cfg_.certify_every == 0) settle_pending();
      if (step % epoch == 0) {
        settle_pending();
        rec.trace.push_back(objective_value(cfg_.objective, best, cfg_.r));
      }
    }
    settle_pending();
    rec.best_graph = std::move(best);
    rec.best_value = objective_value(cfg_.objective, rec.best_graph, cfg_.r);
    rec.certified = constrained && nosal_certified(rec.best_graph);
    return rec;
  }

 private:
  std::optional<EdgeSwap> propose() {
    if (edges_.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick_edge(0, edges_.size() - 1);
    std::uniform_int_distribution<Vertex> pick_vertex(0, static_cast<Vertex>(g_.n() - 1));
    const Edge rem = edges_[pick_edge(rng_)];
    const bool by_degree = (rng_() & 1U) != 0;
    for (int attempt = 0; attempt < 32; ++attempt) {
      Vertex c, d;
      if (by_degree) {
        // Endpoints of uniform edges are degree-proportional vertices.
        const Edge e1 = edges_[pick_edge(rng_)];
        const Edge e2 = edges_[pick_edge(rng_)];
        c = (rng_() & 1U) ? e1.u : e1.v;
        d = (rng_() & 1U) ? e2.u : e2.v;
      } else {
        c = pick_vertex(rng_);
        d = pick_vertex(rng_);
      }
      if (c == d || g_.has_edge(c, d)) continue;
      const Edge add = Edge::of(c, d);
      if (add == rem) continue;
      return EdgeSwap{rem, add};
    }
    return std::nullopt;
  }

  void hist_add(std::size_t c) {
    if (hist_.size() <= c) hist_.resize(c + 1, 0);
    ++hist_[c];
    if (c > 0) ++triangular_;
  }
  void hist_remove(std::size_t c) {
    --hist_[c];
    if (c > 0) --triangular_;
  }
  void bump(Vertex u, Vertex w, int delta) {
    auto& c = codeg_[key(u, w)];
    hist_remove(c);
    c = static_cast<std::uint32_t>(static_cast<int>(c) + delta);
    hist_add(c);
  }

  // 4-cycles through the edge {a, b}, which must be present.
  std::int64_t c4_through(Vertex a, Vertex b) const {
    std::int64_t s = 0;
    for (Vertex x : g_.neighbors(a))
      if (x != b) s += static_cast<std::int64_t>(g_.codegree(x, b)) - 1;
    return s;
  }

  void apply_remove(Vertex a, Vertex b) {
    if (cfg_.objective == Objective::MinC4Ratio) c4_ -= c4_through(a, b);
    for (Vertex w : g_.common_neighbors(a, b)) {
      bump(a, w, -1);
      bump(b, w, -1);
    }
    const auto k = key(a, b);
    hist_remove(codeg_[k]);
    codeg_.erase(k);
    const auto idx = index_[k];
    index_.erase(k);
    if (idx + 1 != edges_.size()) {
      edges_[idx] = edges_.back();
      index_[key(edges_[idx].u, edges_[idx].v)] = idx;
    }
    edges_.pop_back();
    g_.remove_edge(a, b);
  }

  void apply_add(Vertex c, Vertex d) {
    g_.add_edge(c, d);
    const auto common = g_.common_neighbors(c, d);
    for (Vertex w : common) {
      bump(c, w, +1);
      bump(d, w, +1);
    }
    const auto k = key(c, d);
    codeg_[k] = static_cast<std::uint32_t>(common.size());
    hist_add(common.size());
    index_[k] = edges_.size();
    edges_.push_back(Edge::of(c, d));
    if (cfg_.objective == Objective::MinC4Ratio) c4_ += c4_through(c, d);
  }

  double book_energy() const {
    std::size_t bk = hist_.size() - 1;
    while (bk > 0 && hist_[bk] == 0) --bk;
    // The share of edges at the maximum breaks ties toward fewer of them.
    return (static_cast<double>(bk) + static_cast<double>(hist_[bk]) / (m_ + 1.0)) / std::sqrt(m_);
  }

  double current_energy() const { return energy_after(0.0); }

  // Energy of the current state; for the spectral objective `gain` is the
  // pending Rayleigh change not yet folded into rayleigh_.
  double energy_after(double gain) const {
    switch (cfg_.objective) {
      case Objective::MinBookRatio: return book_energy();
      case Objective::MinC4Ratio: return static_cast<double>(c4_) / (m_ * m_);
      case Objective::MinTriangularRatio: return static_cast<double>(triangular_) / std::sqrt(m_);
      case Objective::MaxLambdaBookFree: return -(rayleigh_ + gain) / std::sqrt(m_);
    }
    return 0.0;
  }

  // A few warm power steps; any unit vector gives a valid Rayleigh bound, so
  // no convergence is needed here.
  void refresh() {
    std::vector<double> start(x_);
    for (auto& v : start) v = std::max(v, 1e-9);
    auto st = power_iterate(g_, std::move(start), 0.0, kWarmSteps);
    const double r = quadratic_form(g_, st.x);
    const double r_old = quadratic_form(g_, x_);
    if (r >= r_old) {
      x_ = std::move(st.x);
      rayleigh_ = r;
    } else {
      rayleigh_ = r_old;
    }
  }

  const SearchConfig& cfg_;
  std::mt19937_64 rng_;
  Graph g_;
  double m_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::unordered_map<std::uint64_t, std::uint32_t> codeg_;
  std::vector<std::int64_t> hist_;
  std::int64_t triangular_ = 0;
  std::int64_t c4_ = 0;
  std::vector<double> x_;
  double rayleigh_ = 0.0;
};

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool better(const SearchRecord& a, const SearchRecord& b) {
  if (a.best_value != b.best_value) return a.minimize ? a.best_value < b.best_value : a.best_value > b.best_value;
  return a.restart < b.restart;
}

}  // namespace

SearchRecord extremal_search(const SearchConfig& cfg) {
  if (cfg.m < 1) fail(ErrorKind::Argument, "edge budget must be positive");
  if (cfg.decay < 0.0 || cfg.decay >= 1.0) fail(ErrorKind::Argument, "decay must lie in (0, 1)");
  if (cfg.restarts < 1) fail(ErrorKind::Argument, "restarts must be >= 1");
  if (cfg.objective == Objective::MaxLambdaBookFree && (cfg.r < 2 || cfg.k < 1))
    fail(ErrorKind::Argument, "B_{r,k} needs r >= 2 and k >= 1");
  if (cfg.refresh_every == 0 || cfg.certify_every == 0)
    fail(ErrorKind::Argument, "refresh and certification intervals must be positive");

  const Graph start = search_start(cfg.objective, cfg.m, cfg.r);
  if (cfg.n_max != 0 && cfg.n_max < start.n())
    fail(ErrorKind::Infeasible, "vertex cap is below the starting graph's order");

  std::mutex mu;
  std::optional<SearchRecord> shared;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(cfg.restarts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < cfg.restarts; i = next++) {
      try {
        Chain chain(cfg, start, splitmix(cfg.seed + static_cast<std::uint64_t>(i)));
        auto rec = chain.run();
        rec.restart = i;
        std::lock_guard lock(mu);
        // A min/max with index tie-break: the result ignores scheduling.
        if (!shared || better(rec, *shared)) shared = std::move(rec);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(cfg.threads, 1, cfg.restarts);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return std::move(*shared);
}

}  // namespace nosal
