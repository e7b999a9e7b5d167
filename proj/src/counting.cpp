#include "nosal/counting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "nosal/error.hpp"
#include "nosal/spectral.hpp"

namespace nosal {

namespace {

std::vector<Vertex> intersect(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::vector<Vertex> out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::int64_t choose2(std::int64_t x) { return x * (x - 1) / 2; }

void check_r(int r, const char* who) {
  if (r < 2) fail(ErrorKind::Argument, std::string(who) + ": r must be >= 2");
}

// Extends `chosen` by vertices of `common` greater than the last chosen one.
void extend_cliques(const Graph& g, int size, std::vector<Vertex>& chosen,
                    const std::vector<Vertex>& common, const std::vector<char>* allowed,
                    const std::function<void(std::span<const Vertex>, std::span<const Vertex>)>& visit) {
  if (static_cast<int>(chosen.size()) == size) {
    visit(chosen, common);
    return;
  }
  const Vertex last = chosen.back();
  for (auto it = std::upper_bound(common.begin(), common.end(), last); it != common.end(); ++it) {
    const Vertex w = *it;
    if (allowed && !(*allowed)[w]) continue;
    auto next = intersect(common, g.neighbors(w));
    chosen.push_back(w);
    extend_cliques(g, size, chosen, next, allowed, visit);
    chosen.pop_back();
  }
}

// Counts cliques of `size` extending a clique whose forward candidates are
// `cands`, using forward adjacency lists.
std::int64_t count_forward(const std::vector<std::vector<Vertex>>& fwd,
                           const std::vector<Vertex>& cands, int remaining) {
  if (remaining == 0) return 1;
  if (remaining == 1) return static_cast<std::int64_t>(cands.size());
  if (static_cast<int>(cands.size()) < remaining) return 0;
  std::int64_t total = 0;
  for (Vertex w : cands) {
    auto next = intersect(cands, fwd[w]);
    if (static_cast<int>(next.size()) + 1 < remaining) continue;
    total += count_forward(fwd, next, remaining - 1);
  }
  return total;
}

// Forward adjacency in a degeneracy order, relabelled by rank so each list is
// sorted by rank.
std::vector<std::vector<Vertex>> degeneracy_forward(const Graph& g,
                                                    std::span<const Vertex> vertices) {
  const std::size_t k = vertices.size();
  std::vector<std::int64_t> local(g.n(), -1);
  for (std::size_t i = 0; i < k; ++i) local[vertices[i]] = static_cast<std::int64_t>(i);
  std::vector<std::vector<Vertex>> nb(k);
  std::size_t max_deg = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (Vertex w : g.neighbors(vertices[i]))
      if (local[w] >= 0) nb[i].push_back(static_cast<Vertex>(local[w]));
    max_deg = std::max(max_deg, nb[i].size());
  }
  // Bucket-queue peeling.
  std::vector<std::size_t> deg(k);
  std::vector<std::vector<Vertex>> buckets(max_deg + 1);
  for (std::size_t i = 0; i < k; ++i) {
    deg[i] = nb[i].size();
    buckets[deg[i]].push_back(static_cast<Vertex>(i));
  }
  std::vector<std::int64_t> rank(k, -1);
  std::size_t next_rank = 0;
  std::size_t cur = 0;
  while (next_rank < k) {
    cur = 0;
    while (buckets[cur].empty()) ++cur;
    Vertex v = buckets[cur].back();
    buckets[cur].pop_back();
    if (rank[v] >= 0 || deg[v] != cur) continue;
    rank[v] = static_cast<std::int64_t>(next_rank++);
    for (Vertex w : nb[v])
      if (rank[w] < 0) {
        --deg[w];
        buckets[deg[w]].push_back(w);
      }
  }
  std::vector<std::vector<Vertex>> fwd(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto ri = static_cast<Vertex>(rank[i]);
    for (Vertex w : nb[i])
      if (rank[w] > rank[i]) fwd[ri].push_back(static_cast<Vertex>(rank[w]));
    std::sort(fwd[ri].begin(), fwd[ri].end());
  }
  return fwd;
}

}  // namespace

BookResult book_size(const Graph& g) {
  BookResult best;
  for (const Edge& e : g.edges()) {
    const auto c = static_cast<std::int64_t>(g.codegree(e.u, e.v));
    if (!best.witness || c > best.size) {
      best.size = c;
      best.witness = e;
    }
  }
  return best;
}

void for_each_clique(const Graph& g, int size, std::span<const Vertex> within,
                     const std::function<void(std::span<const Vertex>, std::span<const Vertex>)>& visit) {
  if (size < 1) fail(ErrorKind::Argument, "for_each_clique: size must be >= 1");
  std::vector<char> allowed_mask;
  const std::vector<char>* allowed = nullptr;
  if (!within.empty()) {
    allowed_mask.assign(g.n(), 0);
    for (Vertex v : within) {
      g.check_vertex(v);
      allowed_mask[v] = 1;
    }
    allowed = &allowed_mask;
  }
  std::vector<Vertex> chosen;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (allowed && !allowed_mask[v]) continue;
    std::vector<Vertex> common(g.neighbors(v).begin(), g.neighbors(v).end());
    chosen.assign(1, v);
    extend_cliques(g, size, chosen, common, allowed, visit);
  }
}

GeneralizedBookResult generalized_book(const Graph& g, int r) {
  check_r(r, "generalized_book");
  GeneralizedBookResult best;
  bool found = false;
  for_each_clique(g, r, {}, [&](std::span<const Vertex> q, std::span<const Vertex> common) {
    const auto k = static_cast<std::int64_t>(common.size());
    if (!found || k > best.k) {
      best.k = k;
      best.clique.assign(q.begin(), q.end());
      found = true;
    }
  });
  return best;
}

std::int64_t clique_count_within(const Graph& g, std::span<const Vertex> S, int t) {
  if (t < 1) fail(ErrorKind::Argument, "clique_count: t must be >= 1");
  auto fwd = degeneracy_forward(g, S);
  if (t == 1) return static_cast<std::int64_t>(fwd.size());
  std::int64_t total = 0;
  for (const auto& f : fwd) total += count_forward(fwd, f, t - 1);
  return total;
}

namespace {

bool find_forward(const std::vector<std::vector<Vertex>>& fwd, const std::vector<Vertex>& cands, int remaining) {
  if (remaining <= 0) return true;
  if (static_cast<int>(cands.size()) < remaining) return false;
  if (remaining == 1) return true;
  for (Vertex w : cands)
    if (find_forward(fwd, intersect(cands, fwd[w]), remaining - 1)) return true;
  return false;
}

}  // namespace

bool has_clique(const Graph& g, int t) {
  if (t < 1) fail(ErrorKind::Argument, "has_clique: t must be >= 1");
  if (t == 1) return g.n() > 0;
  if (t == 2) return g.m() > 0;
  std::vector<Vertex> all(g.n());
  for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
  const auto fwd = degeneracy_forward(g, all);
  for (const auto& f : fwd)
    if (find_forward(fwd, f, t - 1)) return true;
  return false;
}

std::int64_t clique_count(const Graph& g, int t) {
  if (t < 1) fail(ErrorKind::Argument, "clique_count: t must be >= 1");
  if (t == 1) return static_cast<std::int64_t>(g.n());
  if (t == 2) return static_cast<std::int64_t>(g.m());
  std::vector<Vertex> all(g.n());
  for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
  return clique_count_within(g, all, t);
}

namespace {

using Row = std::vector<std::uint64_t>;

// t-cliques inside the local vertex set P, counted in increasing order.
std::int64_t count_local(const std::vector<Row>& rows, const Row& P, int t) {
  std::int64_t total = 0;
  if (t == 1) {
    for (auto w : P) total += std::popcount(w);
    return total;
  }
  Row next(P.size());
  for (std::size_t k = 0; k < P.size(); ++k)
    for (std::uint64_t bits = P[k]; bits; bits &= bits - 1) {
      const std::size_t i = k * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      bool any = false;
      for (std::size_t j = 0; j < P.size(); ++j) {
        std::uint64_t keep = j < k ? 0 : j > k ? ~0ULL : (i % 64 == 63 ? 0 : ~0ULL << (i % 64 + 1));
        next[j] = P[j] & rows[i][j] & keep;
        any = any || next[j];
      }
      if (any) total += count_local(rows, next, t - 1);
    }
  return total;
}

// Above this degree the local bitsets get large; such edges fall back to
// counting inside the common neighborhood directly.
constexpr std::size_t kLocalDegreeCap = 4096;

}  // namespace

JointResult joint_size(const Graph& g, int r) {
  check_r(r, "joint_size");
  JointResult best;
  auto consider = [&](Edge e, std::int64_t c) {
    if (!best.witness || c > best.count || (c == best.count && e < *best.witness)) {
      best.count = c;
      best.witness = e;
    }
  };
  if (r == 2) {
    for (const Edge& e : g.edges()) consider(e, static_cast<std::int64_t>(g.codegree(e.u, e.v)));
    return best;
  }
  // Each edge is handled from its lower-degree end u, inside N(u).
  auto lower = [&](Vertex u, Vertex v) {
    const auto du = g.degree(u), dv = g.degree(v);
    return du < dv || (du == dv && u < v);
  };
  std::vector<std::int32_t> local(g.n(), -1);
  std::vector<Row> rows;
  for (Vertex u = 0; u < g.n(); ++u) {
    const auto nu = g.neighbors(u);
    bool owns = false;
    for (Vertex v : nu) owns = owns || lower(u, v);
    if (!owns) continue;
    if (nu.size() > kLocalDegreeCap) {
      for (Vertex v : nu) {
        if (!lower(u, v)) continue;
        auto common = g.common_neighbors(u, v);
        std::int64_t c = 0;
        if (static_cast<int>(common.size()) >= r - 1) c = clique_count_within(g, common, r - 1);
        consider(Edge::of(u, v), c);
      }
      continue;
    }
    const std::size_t d = nu.size(), words = (d + 63) / 64;
    for (std::size_t i = 0; i < d; ++i) local[nu[i]] = static_cast<std::int32_t>(i);
    rows.assign(d, Row(words, 0));
    for (std::size_t i = 0; i < d; ++i) {
      const Vertex w = nu[i];
      if (g.degree(w) <= d) {
        for (Vertex x : g.neighbors(w))
          if (local[x] >= 0) rows[i][static_cast<std::size_t>(local[x]) / 64] |= 1ULL << (local[x] % 64);
      } else {
        for (std::size_t j = 0; j < d; ++j)
          if (g.has_edge(w, nu[j])) rows[i][j / 64] |= 1ULL << (j % 64);
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (!lower(u, nu[i])) continue;
      consider(Edge::of(u, nu[i]), count_local(rows, rows[i], r - 1));
    }
    for (Vertex v : nu) local[v] = -1;
  }
  return best;
}

double kruskal_katona_bound(std::int64_t m, int t) {
  const double x = (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(m))) / 2.0;
  double c = 1.0;
  for (int i = 0; i < t; ++i) c *= (x - i) / (i + 1);
  return std::max(c, 0.0);
}

std::int64_t triangle_count(const Graph& g) {
  std::int64_t s = 0;
  for (const Edge& e : g.edges()) s += static_cast<std::int64_t>(g.codegree(e.u, e.v));
  return s / 3;
}

const char* to_string(C4Method m) noexcept {
  switch (m) {
    case C4Method::Codegree: return "codegree";
    case C4Method::Walks: return "walks";
    case C4Method::Trace: return "trace";
    case C4Method::Brute: return "brute";
  }
  return "?";
}

std::int64_t degree_power(const Graph& g) {
  std::int64_t s = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    const auto d = static_cast<std::int64_t>(g.degree(v));
    s += d * d;
  }
  return s;
}

C4Count c4_count(const Graph& g, C4Method method) {
  C4Count out;
  switch (method) {
    case C4Method::Codegree: {
      // Every unordered pair {u, w} contributes C(codeg, 2); each 4-cycle is
      // seen from both of its diagonals.
      std::vector<std::int64_t> count(g.n(), 0);
      std::vector<Vertex> touched;
      std::int64_t sum = 0;
      for (Vertex u = 0; u < g.n(); ++u) {
        for (Vertex x : g.neighbors(u))
          for (Vertex w : g.neighbors(x))
            if (w > u && count[w]++ == 0) touched.push_back(w);
        for (Vertex w : touched) {
          sum += choose2(count[w]);
          count[w] = 0;
        }
        touched.clear();
      }
      out.value = sum / 2;
      break;
    }
    case C4Method::Walks: {
      const auto t = walk_traces(g);
      const std::int64_t num = t.tr4 + t.tr2 - 2 * degree_power(g);
      if (num % 8 != 0) fail(ErrorKind::Argument, "c4_count(walks): identity not integral");
      out.value = num / 8;
      break;
    }
    case C4Method::Trace: {
      const auto ev = full_spectrum(g);
      double s = 0.0;
      for (double l : ev) s += l * l * l * l + l * l;
      out.raw = s / 8.0 - static_cast<double>(degree_power(g)) / 4.0;
      out.value = std::llround(out.raw);
      return out;
    }
    case C4Method::Brute: {
      if (g.n() > kBruteC4Cap)
        fail(ErrorKind::Capacity, "c4_count(brute) requires n <= " + std::to_string(kBruteC4Cap));
      const auto n = static_cast<Vertex>(g.n());
      auto e = [&](Vertex a, Vertex b) { return g.has_edge(a, b); };
      std::int64_t c = 0;
      for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
          for (Vertex k = j + 1; k < n; ++k)
            for (Vertex l = k + 1; l < n; ++l) {
              c += e(i, j) && e(j, k) && e(k, l) && e(l, i);
              c += e(i, j) && e(j, l) && e(l, k) && e(k, i);
              c += e(i, k) && e(k, j) && e(j, l) && e(l, i);
            }
      out.value = c;
      break;
    }
  }
  out.raw = static_cast<double>(out.value);
  return out;
}

std::int64_t kite_count(const Graph& g) {
  std::int64_t s = 0;
  for (const Edge& e : g.edges()) s += choose2(static_cast<std::int64_t>(g.codegree(e.u, e.v)));
  return s;
}

std::int64_t triangular_edges(const Graph& g) {
  std::int64_t s = 0;
  for (const Edge& e : g.edges()) s += g.codegree(e.u, e.v) > 0;
  return s;
}

std::int64_t k4_saturating_edges(const Graph& g) {
  std::vector<std::int64_t> count(g.n(), 0);
  std::vector<Vertex> touched;
  std::vector<char> in_common(g.n(), 0);
  std::int64_t total = 0;
  for (Vertex u = 0; u < g.n(); ++u) {
    for (Vertex x : g.neighbors(u))
      for (Vertex w : g.neighbors(x))
        if (w > u && count[w]++ == 0) touched.push_back(w);
    for (Vertex w : touched) {
      if (count[w] >= 2 && !g.has_edge(u, w)) {
        auto common = g.common_neighbors(u, w);
        for (Vertex c : common) in_common[c] = 1;
        bool spans_edge = false;
        for (Vertex c : common) {
          for (Vertex d : g.neighbors(c))
            if (in_common[d]) {
              spans_edge = true;
              break;
            }
          if (spans_edge) break;
        }
        for (Vertex c : common) in_common[c] = 0;
        total += spans_edge;
      }
      count[w] = 0;
    }
    touched.clear();
  }
  return total;
}

ChordalSubgraph chordal_lower_bound(const Graph& g) {
  ChordalSubgraph out;
  const auto book = book_size(g);
  if (!book.witness) return out;
  const Edge e = *book.witness;
  out.witness.push_back(e);
  for (Vertex k : g.common_neighbors(e.u, e.v)) {
    out.witness.push_back(Edge::of(e.u, k));
    out.witness.push_back(Edge::of(e.v, k));
  }
  std::sort(out.witness.begin(), out.witness.end());
  out.edges = static_cast<std::int64_t>(out.witness.size());
  return out;
}

namespace {

// Builds a chordal subgraph by adding vertices one at a time, each joined to a
// clique of the current subgraph (reverse perfect elimination ordering).
class ChordalSearch {
 public:
  explicit ChordalSearch(const Graph& g) : g_(g), n_(g.n()), h_(n_, 0) {
    adj_.assign(n_, 0);
    for (const Edge& e : g.edges()) {
      adj_[e.u] |= 1U << e.v;
      adj_[e.v] |= 1U << e.u;
    }
  }

  ChordalSubgraph run() {
    best_ = -1;
    if (n_ == 0) return {};
    // A reverse perfect elimination ordering may start at any vertex of each
    // component; vertex 0 goes first.
    place(0, 1U, 0);
    ChordalSubgraph out;
    out.edges = best_;
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = u + 1; v < n_; ++v)
        if (best_h_[u] >> v & 1U) out.witness.push_back({u, v});
    return out;
  }

 private:
  // Edges of G with at least one endpoint outside `placed`.
  std::int64_t open_edges(std::uint32_t placed) const {
    std::int64_t s = 0;
    for (Vertex v = 0; v < n_; ++v) {
      if (placed >> v & 1U) continue;
      const std::uint32_t nb = adj_[v];
      s += std::popcount(nb & placed);
      s += std::popcount(nb & ~placed & ((1U << v) - 1U) & ((1U << n_) - 1U));
    }
    return s;
  }

  void place(Vertex, std::uint32_t placed, std::int64_t edges) {
    if (placed == (1U << n_) - 1U) {
      if (edges > best_) {
        best_ = edges;
        best_h_ = h_;
      }
      return;
    }
    if (edges + open_edges(placed) <= best_) return;
    for (Vertex v = 0; v < n_; ++v) {
      if (placed >> v & 1U) continue;
      const std::uint32_t cand = adj_[v] & placed;
      // Maximal cliques of H inside cand; non-maximal choices are dominated.
      std::vector<std::uint32_t> cliques;
      maximal_cliques(0, cand, 0, cliques);
      for (std::uint32_t k : cliques) {
        for (Vertex w = 0; w < n_; ++w)
          if (k >> w & 1U) {
            h_[v] |= 1U << w;
            h_[w] |= 1U << v;
          }
        place(v, placed | (1U << v), edges + std::popcount(k));
        for (Vertex w = 0; w < n_; ++w)
          if (k >> w & 1U) {
            h_[v] &= ~(1U << w);
            h_[w] &= ~(1U << v);
          }
      }
    }
  }

  // Bron-Kerbosch with pivoting over the current subgraph H.
  void maximal_cliques(std::uint32_t r, std::uint32_t p, std::uint32_t x,
                       std::vector<std::uint32_t>& out) const {
    if (p == 0 && x == 0) {
      out.push_back(r);
      return;
    }
    Vertex pivot = static_cast<Vertex>(std::countr_zero(p | x));
    std::uint32_t todo = p & ~h_[pivot];
    while (todo) {
      const auto v = static_cast<Vertex>(std::countr_zero(todo));
      todo &= todo - 1;
      maximal_cliques(r | (1U << v), p & h_[v], x & h_[v], out);
      p &= ~(1U << v);
      x |= 1U << v;
    }
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<std::uint32_t> h_;
  std::vector<std::uint32_t> adj_;
  std::vector<std::uint32_t> best_h_;
  std::int64_t best_ = -1;
};

}  // namespace

ChordalSubgraph chordal_exact(const Graph& g) {
  if (g.n() > kChordalExactCap)
    fail(ErrorKind::Capacity, "chordal_exact requires n <= " + std::to_string(kChordalExactCap));
  return ChordalSearch(g).run();
}

CountReport count_all(const Graph& g, CountOptions opts) {
  CountReport r;
  r.n = static_cast<std::int64_t>(g.n());
  r.m = static_cast<std::int64_t>(g.m());
  r.triangles = triangle_count(g);
  r.c4 = c4_count(g, C4Method::Codegree).value;
  r.kites = kite_count(g);
  r.book = book_size(g);
  for (int k = 2; k <= opts.max_r; ++k) {
    r.generalized_book[k] = generalized_book(g, k);
    r.joint_size[k] = joint_size(g, k);
  }
  for (int t = 1; t <= opts.max_clique; ++t) r.clique_counts[t] = clique_count(g, t);
  r.triangular_edges = triangular_edges(g);
  r.k4_saturating = k4_saturating_edges(g);
  r.chordal_lb = chordal_lower_bound(g);
  r.degree_power = degree_power(g);
  r.max_degree = static_cast<std::int64_t>(g.max_degree());
  return r;
}

}  // namespace nosal
