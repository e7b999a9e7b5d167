#include "nosal/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <string>

#include "nosal/error.hpp"

namespace nosal {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Argument: return "argument";
    case ErrorKind::Index: return "index";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::NoWitness: return "no-witness";
    case ErrorKind::Codec: return "codec";
  }
  return "unknown";
}

Graph::Graph(std::size_t n) : adj_(n) {
  if (n <= kBitsetCap) {
    words_ = (n + 63) / 64;
    bits_.assign(n * words_, 0);
  }
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

void Graph::check_vertex(Vertex v) const {
  if (v >= adj_.size())
    fail(ErrorKind::Index, "vertex " + std::to_string(v) + " out of range (n=" +
                               std::to_string(adj_.size()) + ")");
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& nb : adj_) best = std::max(best, nb.size());
  return best;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> d(adj_.size());
  for (std::size_t i = 0; i < adj_.size(); ++i) d[i] = adj_[i].size();
  return d;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  if (words_ != 0) return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U;
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const Vertex target = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), target);
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return adj_[v];
}

std::span<const std::uint64_t> Graph::row(Vertex v) const {
  check_vertex(v);
  if (words_ == 0) fail(ErrorKind::Capacity, "graph has no bitset rows");
  return {bits_.data() + v * words_, words_};
}

namespace {

// Sorted-list intersection size; probes the shorter list into the longer one
// when the lengths are lopsided.
std::size_t sorted_intersection_size(std::span<const Vertex> a,
                                     std::span<const Vertex> b) {
  if (a.size() > b.size()) std::swap(a, b);
  if (a.empty()) return 0;
  std::size_t count = 0;
  if (a.size() * 16 < b.size()) {
    for (Vertex x : a) count += std::binary_search(b.begin(), b.end(), x);
    return count;
  }
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

std::size_t Graph::codegree(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  if (words_ != 0) {
    const std::uint64_t* a = bits_.data() + u * words_;
    const std::uint64_t* b = bits_.data() + v * words_;
    std::size_t c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += std::popcount(a[w] & b[w]);
    return c;
  }
  return sorted_intersection_size(adj_[u], adj_[v]);
}

std::vector<Vertex> Graph::common_neighbors(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  std::vector<Vertex> out;
  std::set_intersection(adj_[u].begin(), adj_[u].end(), adj_[v].begin(),
                        adj_[v].end(), std::back_inserter(out));
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Vertex u = 0; u < adj_.size(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.push_back({u, v});
  return out;
}

bool Graph::add_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) fail(ErrorKind::Argument, "self-loop at vertex " + std::to_string(u));
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) return false;
  au.insert(it, v);
  auto& av = adj_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  if (words_ != 0) {
    bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
    bits_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
  }
  ++m_;
  return true;
}

bool Graph::remove_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it == au.end() || *it != v) return false;
  au.erase(it);
  auto& av = adj_[v];
  av.erase(std::lower_bound(av.begin(), av.end(), u));
  if (words_ != 0) {
    bits_[u * words_ + v / 64] &= ~(std::uint64_t{1} << (v % 64));
    bits_[v * words_ + u / 64] &= ~(std::uint64_t{1} << (u % 64));
  }
  --m_;
  return true;
}

namespace {

std::vector<Vertex> normalized(const Graph& g, std::span<const Vertex> S) {
  std::vector<Vertex> s(S.begin(), S.end());
  for (Vertex v : s) g.check_vertex(v);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

InducedGraph induced(const Graph& g, std::span<const Vertex> S) {
  auto s = normalized(g, S);
  std::vector<std::int64_t> pos(g.n(), -1);
  for (std::size_t i = 0; i < s.size(); ++i) pos[s[i]] = static_cast<std::int64_t>(i);
  Graph h(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (Vertex w : g.neighbors(s[i]))
      if (pos[w] > static_cast<std::int64_t>(i))
        h.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(pos[w]));
  return {std::move(h), std::move(s)};
}

InducedGraph bipartite_induced(const Graph& g, std::span<const Vertex> A,
                               std::span<const Vertex> B) {
  auto a = normalized(g, A);
  auto b = normalized(g, B);
  std::vector<std::int64_t> pos(g.n(), -1);
  std::vector<char> side(g.n(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    pos[a[i]] = static_cast<std::int64_t>(i);
    side[a[i]] = 1;
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (side[b[i]] == 1) fail(ErrorKind::Argument, "bipartite_induced: sides overlap");
    pos[b[i]] = static_cast<std::int64_t>(a.size() + i);
    side[b[i]] = 2;
  }
  Graph h(a.size() + b.size());
  for (Vertex u : a)
    for (Vertex w : g.neighbors(u))
      if (side[w] == 2)
        h.add_edge(static_cast<Vertex>(pos[u]), static_cast<Vertex>(pos[w]));
  std::vector<Vertex> map = std::move(a);
  map.insert(map.end(), b.begin(), b.end());
  return {std::move(h), std::move(map)};
}

std::vector<std::vector<Vertex>> components(const Graph& g) {
  std::vector<std::vector<Vertex>> out;
  std::vector<char> seen(g.n(), 0);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

BipartiteCheck is_bipartite(const Graph& g) {
  BipartiteCheck res;
  std::vector<int> color(g.n(), -1);
  std::vector<Vertex> parent(g.n(), 0);
  std::vector<std::size_t> depth(g.n(), 0);
  for (Vertex s = 0; s < g.n(); ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    parent[s] = s;
    std::deque<Vertex> queue{s};
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbors(v)) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          parent[w] = v;
          depth[w] = depth[v] + 1;
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          // Same BFS depth parity: tree paths to the common ancestor plus
          // the edge v-w form an odd cycle.
          std::vector<Vertex> left{v};
          std::vector<Vertex> right{w};
          Vertex a = v;
          Vertex b = w;
          while (depth[a] > depth[b]) left.push_back(a = parent[a]);
          while (depth[b] > depth[a]) right.push_back(b = parent[b]);
          while (a != b) {
            left.push_back(a = parent[a]);
            right.push_back(b = parent[b]);
          }
          right.pop_back();
          res.odd_cycle = std::move(left);
          res.odd_cycle.insert(res.odd_cycle.end(), right.rbegin(), right.rend());
          return res;
        }
      }
    }
  }
  res.bipartite = true;
  res.coloring = std::move(color);
  return res;
}

}  // namespace nosal
