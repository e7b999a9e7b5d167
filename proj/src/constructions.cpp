#include "nosal/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "nosal/counting.hpp"
#include "nosal/error.hpp"
#include "nosal/spectral.hpp"

namespace nosal {

namespace {

std::int64_t choose(std::int64_t n, int k) {
  if (n < k || k < 0) return 0;
  std::int64_t c = 1;
  for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

std::int64_t ceil_sqrt(std::int64_t x) {
  auto r = isqrt(x);
  return r * r == x ? r : r + 1;
}

void need(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

Prediction eq(std::string stat, double v) { return {std::move(stat), Relation::Equal, v}; }

void add_pendants(Graph& g, Vertex hub, std::size_t first, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) g.add_edge(hub, static_cast<Vertex>(first + i));
}

bool holds(Relation rel, double observed, double predicted, double tol) {
  switch (rel) {
    case Relation::Equal: return std::abs(observed - predicted) <= tol;
    case Relation::Greater: return observed > predicted;
    case Relation::AtLeast: return observed >= predicted - tol;
    case Relation::AtMost: return observed <= predicted + tol;
  }
  return false;
}

}  // namespace

const char* to_string(Relation r) noexcept {
  switch (r) {
    case Relation::Equal: return "==";
    case Relation::Greater: return ">";
    case Relation::AtLeast: return ">=";
    case Relation::AtMost: return "<=";
  }
  return "?";
}

std::int64_t isqrt(std::int64_t x) {
  if (x < 0) fail(ErrorKind::Argument, "isqrt of a negative number");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r > x / r) --r;
  while (r + 1 <= x / (r + 1)) ++r;
  return r;
}

std::vector<PredictionCheck> self_check(const ConstructionOutput& c) {
  const Graph& g = c.graph;
  std::vector<PredictionCheck> out;
  std::optional<double> lambda;
  auto get_lambda = [&] {
    if (!lambda) lambda = spectral_radius(g).lambda;
    return *lambda;
  };
  for (const auto& p : c.predicted) {
    double obs = 0.0;
    double tol = 0.0;
    const std::string& s = p.stat;
    if (s == "n") obs = static_cast<double>(g.n());
    else if (s == "m") obs = static_cast<double>(g.m());
    else if (s == "bk") obs = static_cast<double>(book_size(g).size);
    else if (s == "c4") obs = static_cast<double>(c4_count(g, C4Method::Codegree).value);
    else if (s == "kites") obs = static_cast<double>(kite_count(g));
    else if (s == "triangular_edges") obs = static_cast<double>(triangular_edges(g));
    else if (s == "lambda") {
      obs = get_lambda();
      tol = 1e-9;
    } else if (s == "nosal") {
      obs = is_nosal(g).kind == NosalKind::CertifiedYes ? 1.0 : 0.0;
    } else if (s.starts_with("cliques_")) {
      obs = static_cast<double>(clique_count(g, std::stoi(s.substr(8))));
    } else if (s.starts_with("joint_")) {
      obs = static_cast<double>(joint_size(g, std::stoi(s.substr(6))).count);
    } else {
      fail(ErrorKind::Argument, "self_check: unknown statistic '" + s + "'");
    }
    out.push_back({p, obs, holds(p.rel, obs, p.value, tol)});
  }
  return out;
}

Graph clique_identify(std::size_t s, const Graph& h) {
  need(s >= 1, ErrorKind::Argument, "clique size must be >= 1");
  need(h.n() >= 1, ErrorKind::Argument, "H must have a vertex to identify");
  need(triangle_count(h) == 0, ErrorKind::Argument, "H must be triangle-free");
  // H's vertex 0 becomes clique vertex 0; H's vertex i > 0 becomes s + i - 1.
  Graph g(s + h.n() - 1);
  for (Vertex u = 0; u < s; ++u)
    for (Vertex v = u + 1; v < s; ++v) g.add_edge(u, v);
  auto map = [&](Vertex v) { return v == 0 ? Vertex{0} : static_cast<Vertex>(s + v - 1); };
  for (const Edge& e : h.edges()) g.add_edge(map(e.u), map(e.v));
  return g;
}

namespace {

ConstructionOutput clique_with(std::int64_t m, const Graph* h, const char* name) {
  need(m >= 1, ErrorKind::Infeasible, std::string(name) + ": m must be >= 1");
  const std::int64_t s = ceil_sqrt(m) + 1;
  const std::int64_t t = m - choose(s, 2);
  need(t >= 0, ErrorKind::Infeasible,
       std::string(name) + ": m = " + std::to_string(m) + " gives t = m - C(s,2) < 0");
  ConstructionOutput c;
  c.name = name;
  if (h) {
    need(static_cast<std::int64_t>(h->m()) == t, ErrorKind::Argument,
         std::string(name) + ": H must have exactly t = " + std::to_string(t) + " edges");
    c.graph = clique_identify(static_cast<std::size_t>(s), *h);
  } else {
    c.graph = Graph(static_cast<std::size_t>(s + t));
    for (Vertex u = 0; u < s; ++u)
      for (Vertex v = u + 1; v < s; ++v) c.graph.add_edge(u, v);
    add_pendants(c.graph, 0, static_cast<std::size_t>(s), static_cast<std::size_t>(t));
    c.predicted.push_back(eq("c4", 3.0 * static_cast<double>(choose(s, 4))));
  }
  c.params = {{"m", m}, {"s", s}, {"t", t}};
  c.predicted.push_back(eq("m", static_cast<double>(m)));
  c.predicted.push_back(eq("bk", static_cast<double>(std::max<std::int64_t>(s - 2, 0))));
  c.predicted.push_back({"lambda", t > 0 ? Relation::Greater : Relation::Equal,
                         static_cast<double>(s - 1)});
  if (t > 0 || (s - 1) * (s - 1) > m) c.predicted.push_back(eq("nosal", 1));
  return c;
}

}  // namespace

ConstructionOutput clique_plus_star(std::int64_t m) { return clique_with(m, nullptr, "clique_plus_star"); }

ConstructionOutput clique_plus_graph(std::int64_t m, const Graph& h) {
  return clique_with(m, &h, "clique_plus_graph");
}

ConstructionOutput k_st_plus(std::int64_t s, std::int64_t t) {
  need(s >= 2 && t >= 1, ErrorKind::Infeasible, "k_st_plus requires s >= 2 and t >= 1");
  ConstructionOutput c;
  c.name = "k_st_plus";
  c.params = {{"s", s}, {"t", t}};
  c.graph = Graph(static_cast<std::size_t>(s + t));
  for (Vertex u = 0; u < s; ++u)
    for (std::int64_t j = 0; j < t; ++j) c.graph.add_edge(u, static_cast<Vertex>(s + j));
  c.graph.add_edge(0, 1);
  c.predicted = {eq("m", static_cast<double>(s * t + 1)),
                 eq("bk", static_cast<double>(t)),
                 eq("triangular_edges", static_cast<double>(2 * t + 1)),
                 eq("kites", static_cast<double>(choose(t, 2))),
                 eq("c4", static_cast<double>(choose(s, 2) * choose(t, 2)))};
  if (s < 4 * (t + 1)) c.predicted.push_back(eq("nosal", 1));
  return c;
}

ConstructionOutput prism_blowup(std::int64_t k) {
  need(k >= 1, ErrorKind::Infeasible, "prism_blowup requires k >= 1");
  ConstructionOutput c;
  c.name = "prism_blowup";
  c.params = {{"k", k}};
  const auto up = static_cast<std::size_t>(k + 1);
  const auto low = static_cast<std::size_t>(k - 1);
  // Parts 0..2 are the upper triangle, 3..5 the lower; part i+3 sits under i.
  std::size_t start[7];
  start[0] = 0;
  for (int i = 0; i < 6; ++i) start[i + 1] = start[i] + (i < 3 ? up : low);
  c.graph = Graph(start[6]);
  auto join = [&](int a, int b) {
    for (std::size_t u = start[a]; u < start[a + 1]; ++u)
      for (std::size_t v = start[b]; v < start[b + 1]; ++v)
        c.graph.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  };
  for (int i = 0; i < 3; ++i) {
    join(i, (i + 1) % 3);
    join(3 + i, 3 + (i + 1) % 3);
    join(i, 3 + i);
  }
  c.predicted = {eq("n", static_cast<double>(6 * k)), eq("m", static_cast<double>(9 * k * k + 3)),
                 eq("bk", static_cast<double>(k + 1)), eq("nosal", 1)};
  return c;
}

ConstructionOutput book_construction(std::int64_t m) {
  need(m >= 9, ErrorKind::Infeasible, "book_construction requires m >= 9");
  std::int64_t t = isqrt(m) - 2;  // largest integer below floor(sqrt(m) - 1)
  if ((m - t - 1) % 2 != 0) --t;
  need(t >= 0, ErrorKind::Infeasible, "book_construction: no admissible t");
  const std::int64_t q = (m - t - 1) / 2;
  ConstructionOutput c;
  c.name = "book_construction";
  c.params = {{"m", m}, {"t", t}, {"q", q}};
  c.graph = Graph(static_cast<std::size_t>(2 + q + t));
  c.graph.add_edge(0, 1);
  for (std::int64_t i = 0; i < q; ++i) {
    c.graph.add_edge(0, static_cast<Vertex>(2 + i));
    c.graph.add_edge(1, static_cast<Vertex>(2 + i));
  }
  add_pendants(c.graph, 0, static_cast<std::size_t>(2 + q), static_cast<std::size_t>(t));
  const double core = (1.0 + std::sqrt(4.0 * static_cast<double>(m - t) - 3.0)) / 2.0;
  c.predicted = {eq("m", static_cast<double>(m)), eq("c4", static_cast<double>(choose(q, 2))),
                 eq("bk", static_cast<double>(q)),
                 {"lambda", t > 0 ? Relation::Greater : Relation::Equal, core},
                 eq("nosal", 1)};
  return c;
}

ConstructionOutput book_core(std::int64_t m) {
  need(m >= 3 && m % 2 == 1, ErrorKind::Infeasible, "book_core requires odd m >= 3");
  const std::int64_t q = (m - 1) / 2;
  ConstructionOutput c;
  c.name = "book_core";
  c.params = {{"m", m}, {"q", q}};
  c.graph = Graph(static_cast<std::size_t>(2 + q));
  c.graph.add_edge(0, 1);
  for (std::int64_t i = 0; i < q; ++i) {
    c.graph.add_edge(0, static_cast<Vertex>(2 + i));
    c.graph.add_edge(1, static_cast<Vertex>(2 + i));
  }
  c.predicted = {eq("m", static_cast<double>(m)), eq("c4", static_cast<double>(choose(q, 2))),
                 eq("bk", static_cast<double>(q)),
                 eq("lambda", (1.0 + std::sqrt(4.0 * static_cast<double>(m) - 3.0)) / 2.0),
                 eq("nosal", 1)};
  return c;
}

Graph complete_multipartite(std::span<const std::size_t> parts) {
  std::size_t n = 0;
  for (auto p : parts) n += p;
  Graph g(n);
  std::vector<std::size_t> owner;
  owner.reserve(n);
  for (std::size_t i = 0; i < parts.size(); ++i) owner.insert(owner.end(), parts[i], i);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (owner[u] != owner[v]) g.add_edge(u, v);
  return g;
}

Graph turan(std::size_t n, std::size_t r) {
  need(r >= 1 && n >= r, ErrorKind::Infeasible, "turan requires n >= r >= 1");
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (u % r != v % r) g.add_edge(u, v);
  return g;
}

ConstructionOutput kpartite_plus_edge(std::int64_t t, std::int64_t r) {
  need(t >= 2 && r >= 2, ErrorKind::Infeasible, "kpartite_plus_edge requires t >= 2 and r >= 2");
  std::vector<std::size_t> parts(static_cast<std::size_t>(r), static_cast<std::size_t>(t));
  ConstructionOutput c;
  c.name = "kpartite_plus_edge";
  c.params = {{"t", t}, {"r", r}};
  c.graph = complete_multipartite(parts);
  c.graph.add_edge(0, 1);
  std::int64_t copies = 1;
  for (std::int64_t i = 0; i + 1 < r; ++i) copies *= t;
  c.predicted = {eq("m", static_cast<double>(choose(r, 2) * t * t + 1)),
                 {"cliques_" + std::to_string(r + 1), Relation::AtMost, static_cast<double>(copies)},
                 eq("nosal", 1)};
  return c;
}

ConstructionOutput clique_joint_tight(std::int64_t m, std::int64_t r) {
  need(r >= 2 && m >= 1, ErrorKind::Infeasible, "clique_joint_tight requires r >= 2 and m >= 1");
  const std::int64_t s = isqrt(2 * m * (r - 1) / r) + 1;
  const std::int64_t t = m - choose(s, 2);
  need(t >= 0, ErrorKind::Infeasible, "clique_joint_tight: t = m - C(s,2) < 0");
  ConstructionOutput c;
  c.name = "clique_joint_tight";
  c.params = {{"m", m}, {"r", r}, {"s", s}, {"t", t}};
  c.graph = Graph(static_cast<std::size_t>(s + t));
  for (Vertex u = 0; u < s; ++u)
    for (Vertex v = u + 1; v < s; ++v) c.graph.add_edge(u, v);
  add_pendants(c.graph, 0, static_cast<std::size_t>(s), static_cast<std::size_t>(t));
  c.predicted = {eq("m", static_cast<double>(m)),
                 eq("joint_" + std::to_string(r), static_cast<double>(choose(s - 2, static_cast<int>(r - 1)))),
                 {"lambda", t > 0 ? Relation::Greater : Relation::Equal, static_cast<double>(s - 1)}};
  if (t > 0 || (s - 1) * (s - 1) > m) c.predicted.push_back(eq("nosal", 1));
  return c;
}

std::vector<std::string> construction_names() {
  return {"clique_plus_star", "k_st_plus", "prism_blowup", "book_construction",
          "book_core", "turan", "kpartite_plus_edge", "clique_joint_tight"};
}

ConstructionOutput generate(std::string_view name, const std::map<std::string, std::int64_t>& params) {
  auto get = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end())
      fail(ErrorKind::Argument, std::string(name) + ": missing parameter '" + key + "'");
    return it->second;
  };
  if (name == "clique_plus_star") return clique_plus_star(get("m"));
  if (name == "k_st_plus") return k_st_plus(get("s"), get("t"));
  if (name == "prism_blowup") return prism_blowup(get("k"));
  if (name == "book_construction") return book_construction(get("m"));
  if (name == "book_core") return book_core(get("m"));
  if (name == "kpartite_plus_edge") return kpartite_plus_edge(get("t"), get("r"));
  if (name == "clique_joint_tight") return clique_joint_tight(get("m"), get("r"));
  if (name == "turan") {
    const auto n = get("n");
    const auto r = get("r");
    need(n >= 0 && r >= 1, ErrorKind::Infeasible, "turan requires n >= r >= 1");
    ConstructionOutput c;
    c.name = "turan";
    c.params = {{"n", n}, {"r", r}};
    c.graph = turan(static_cast<std::size_t>(n), static_cast<std::size_t>(r));
    std::int64_t sq = 0;
    for (std::int64_t i = 0; i < r; ++i) {
      const std::int64_t p = n / r + (i < n % r ? 1 : 0);
      sq += p * p;
    }
    c.predicted = {eq("n", static_cast<double>(n)), eq("m", static_cast<double>((n * n - sq) / 2)),
                   eq("cliques_" + std::to_string(r + 1), 0)};
    return c;
  }
  fail(ErrorKind::Argument, "unknown construction '" + std::string(name) + "'");
}

}  // namespace nosal
