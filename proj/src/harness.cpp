#include "nosal/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nosal/counting.hpp"
#include "nosal/dichotomy.hpp"
#include "nosal/error.hpp"
#include "nosal/search.hpp"
#include "nosal/spectral.hpp"
#include "nosal/weighted.hpp"

namespace nosal {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::ReportedOnly: return "reported-only";
  }
  return "?";
}

namespace {

const char* const kSearchPrefix = "search_";

std::string describe(const ConstructionOutput& c) {
  std::string s = c.name + "(";
  bool first = true;
  for (const auto& [k, v] : c.params) {
    if (!first) s += ",";
    s += k + "=" + std::to_string(v);
    first = false;
  }
  return s + ")";
}

GraphCase from_construction(ConstructionOutput c) {
  GraphCase gc;
  gc.descriptor = describe(c);
  gc.predictions = self_check(c);
  gc.graph = std::move(c.graph);
  return gc;
}

Graph random_edges(std::size_t n, std::int64_t m, std::uint64_t seed) {
  Graph g(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  while (static_cast<std::int64_t>(g.m()) < m) {
    const Vertex a = pick(rng), b = pick(rng);
    if (a != b) g.add_edge(a, b);
  }
  return g;
}

// Upper bound on the work of a two-hop pass.
std::int64_t two_hop_work(const Graph& g) {
  std::int64_t s = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    const auto d = static_cast<std::int64_t>(g.degree(v));
    s += d * (d - 1) / 2;
  }
  return s;
}

// Two-hop passes: the exact 4-cycle identity runs up to a few seconds of
// work; saturating pairs are enumerated one by one and get less.
constexpr std::int64_t kC4Budget = 4'000'000'000;
constexpr std::int64_t kPairBudget = 200'000'000;
constexpr std::size_t kMatrixCheckCap = 20000;
constexpr double kDichotomyEps = 0.1;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Rows {
  std::string graph;
  std::vector<VerificationRow> out;

  void add(const std::string& claim, double observed, double bound, double margin, Verdict v,
           std::string note = {}) {
    out.push_back({claim, graph, observed, bound, margin, v, std::move(note)});
  }
  void floor(const std::string& claim, double observed, double bound, bool strict, bool decisive,
             std::string note = {}) {
    const bool holds = strict ? observed > bound : observed >= bound;
    add(claim, observed, bound, observed - bound,
        decisive ? (holds ? Verdict::Pass : Verdict::Fail) : Verdict::ReportedOnly, std::move(note));
  }
  void ceiling(const std::string& claim, double observed, double bound, bool decisive, std::string note = {}) {
    add(claim, observed, bound, bound - observed,
        decisive ? (observed <= bound ? Verdict::Pass : Verdict::Fail) : Verdict::ReportedOnly,
        std::move(note));
  }
  void na(const std::string& claim, const std::string& why) {
    add(claim, 0.0, 0.0, 0.0, Verdict::ReportedOnly, "n/a: " + why);
  }
  // A thrown error becomes the row: fail for decisive claims, since they
  // could not be confirmed.
  void guard(const std::string& claim, bool decisive, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(claim, 0.0, 0.0, 0.0, decisive ? Verdict::Fail : Verdict::ReportedOnly,
          std::string("error: ") + e.what());
    }
  }
};

}  // namespace

std::vector<std::string> family_names() {
  auto names = construction_names();
  names.push_back("random");
  for (auto o : {Objective::MinBookRatio, Objective::MinC4Ratio, Objective::MinTriangularRatio})
    names.push_back(std::string(kSearchPrefix) + to_string(o));
  return names;
}

GraphCase make_case(const std::string& family, std::int64_t m, std::uint64_t seed, std::size_t search_steps) {
  if (m < 1) fail(ErrorKind::Argument, "make_case: m must be positive");
  const double root = std::sqrt(static_cast<double>(m));
  if (family == "clique_plus_star") return from_construction(clique_plus_star(m));
  if (family == "k_st_plus") {
    const std::int64_t t = std::max<std::int64_t>(1, std::llround(root / 2.0));
    return from_construction(k_st_plus(std::max<std::int64_t>(2, (m - 1) / t), t));
  }
  if (family == "prism_blowup") return from_construction(prism_blowup(std::max<std::int64_t>(1, isqrt((m - 3) / 9))));
  if (family == "book_construction") return from_construction(book_construction(std::max<std::int64_t>(m, 9)));
  if (family == "book_core") return from_construction(book_core(std::max<std::int64_t>(m | 1, 3)));
  if (family == "kpartite_plus_edge")
    return from_construction(kpartite_plus_edge(std::max<std::int64_t>(1, isqrt((m - 1) / 3)), 3));
  if (family == "clique_joint_tight") return from_construction(clique_joint_tight(m, 3));
  if (family == "turan") {
    const auto n = std::max<std::int64_t>(2, std::llround(2.0 * root));
    return from_construction(generate("turan", {{"n", n}, {"r", 2}}));
  }
  if (family == "random") {
    const auto n = static_cast<std::size_t>(std::ceil(2.2 * root)) + 1;
    GraphCase gc;
    gc.graph = random_edges(n, m, seed);
    gc.descriptor = "random(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ",seed=" + std::to_string(seed) + ")";
    return gc;
  }
  if (family.rfind(kSearchPrefix, 0) == 0) {
    SearchConfig cfg;
    cfg.m = m;
    cfg.objective = objective_from_string(family.substr(std::string(kSearchPrefix).size()));
    if (cfg.objective == Objective::MaxLambdaBookFree)
      fail(ErrorKind::Argument, "make_case: the book-free objective has no Nosal family");
    cfg.steps = search_steps;
    cfg.seed = seed;
    cfg.certify_every = std::max<std::size_t>(1, search_steps / 10);
    auto rec = extremal_search(cfg);
    GraphCase gc;
    gc.graph = std::move(rec.best_graph);
    gc.descriptor = family + "(m=" + std::to_string(m) + ",steps=" + std::to_string(search_steps) +
                    ",seed=" + std::to_string(seed) + ")";
    return gc;
  }
  fail(ErrorKind::Argument, "unknown family '" + family + "'");
}

const std::vector<std::string>& claim_manifest() {
  static const std::vector<std::string> ids = {
      "nosal",
      "book_floor",
      "edwards_book",
      "weighted_density",
      "weighted_book",
      "proof_book_witness",
      "generalized_book",
      "joint",
      "joint_dense",
      "joint_vertex_spectral",
      "clique_supersaturation",
      "joint_weights",
      "kruskal_katona",
      "c4_density",
      "c4_walk_identity",
      "c4_spectral_identity",
      "degree_power_bound",
      "degree_power_ratio",
      "max_degree",
      "universal_shift",
      "matrix_bound",
      "dichotomy",
      "triangles",
      "triangular_floor",
      "chordal_floor",
      "k4_saturating",
      "kite_floor",
      "degree_square",
      "signless_bound",
      "degree_square_book_free",
      "construction_prediction",
  };
  return ids;
}

std::vector<std::string> missing_claims(const std::vector<VerificationRow>& rows) {
  std::vector<std::string> out;
  for (const auto& id : claim_manifest())
    if (std::none_of(rows.begin(), rows.end(), [&](const VerificationRow& r) { return r.claim == id; }))
      out.push_back(id);
  return out;
}

bool any_failed(const std::vector<VerificationRow>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const VerificationRow& r) { return r.verdict == Verdict::Fail; });
}

std::vector<VerificationRow> verify_graph(const GraphCase& c, double tol) {
  const Graph& g = c.graph;
  Rows rows{c.descriptor, {}};
  if (g.m() == 0) {
    for (const auto& id : claim_manifest()) rows.na(id, "graph has no edges");
    return rows.out;
  }
  const double m = static_cast<double>(g.m());
  const double n = static_cast<double>(g.n());
  const double root = std::sqrt(m);
  const std::string uncertified = "not certified Nosal";

  SpectralCertificate cert;
  NosalVerdict verdict;
  bool spectral_ok = false;
  rows.guard("nosal", false, [&] {
    cert = spectral_radius(g);
    verdict = is_nosal(g, cert);
    spectral_ok = true;
    rows.add("nosal", cert.lambda, root, cert.lambda - root, Verdict::ReportedOnly, to_string(verdict.kind));
  });
  const bool certified = spectral_ok && verdict.kind == NosalKind::CertifiedYes;
  const double lambda = cert.lambda;

  const auto bk = book_size(g).size;
  rows.guard("book_floor", certified, [&] {
    if (!certified) return rows.na("book_floor", uncertified);
    rows.floor("book_floor", static_cast<double>(bk), root / 144.0, true, true);
  });
  rows.guard("edwards_book", true, [&] {
    if (!(4.0 * m > n * n)) return rows.na("edwards_book", "m <= n^2/4");
    rows.floor("edwards_book", static_cast<double>(bk), n / 6.0, true, true);
  });

  std::optional<WeightedGraph> book_weights;
  rows.guard("weighted_density", certified, [&] {
    if (!certified) return rows.na("weighted_density", uncertified);
    book_weights = proof_weights_book(g, cert);
    rows.floor("weighted_density", weighted_edge_density(*book_weights), 0.25, true, true);
  });
  rows.guard("weighted_book", true, [&] {
    if (!book_weights) return rows.na("weighted_book", "no proof weights");
    const double density = weighted_edge_density(*book_weights);
    if (!(density > 0.25)) return rows.na("weighted_book", "weighted density <= 1/4");
    const auto best = best_weighted_book_edge(*book_weights);
    rows.floor("weighted_book", best.value, 1.0 / 6.0, false, true);
  });
  rows.guard("proof_book_witness", certified, [&] {
    if (!certified) return rows.na("proof_book_witness", uncertified);
    const auto w = book_witness_from_proof(g, cert);
    rows.floor("proof_book_witness", static_cast<double>(w.book.size()), w.floor, true, true,
               "edge " + std::to_string(w.edge.u) + "-" + std::to_string(w.edge.v));
  });

  const int r = 3;
  const double rr = static_cast<double>(r);
  const double dense_threshold = (1.0 - 1.0 / rr) * 2.0 * m;
  const bool above = spectral_ok && lambda * lambda > dense_threshold;
  rows.guard("generalized_book", false, [&] {
    if (!above) return rows.na("generalized_book", "lambda^2 <= (1 - 1/r) 2m");
    const auto gb = generalized_book(g, r);
    rows.floor("generalized_book", static_cast<double>(gb.k), root, false, false, "r=3, scale sqrt(m)");
  });
  std::int64_t js = -1;
  rows.guard("joint", false, [&] {
    if (!above) return rows.na("joint", "lambda^2 <= (1 - 1/r) 2m");
    js = joint_size(g, r).count;
    rows.floor("joint", static_cast<double>(js), std::pow(m, (rr - 1.0) / 2.0), false, false,
               "r=3, scale m^((r-1)/2)");
  });
  rows.guard("joint_dense", true, [&] {
    if (!(m > (1.0 - 1.0 / rr) * n * n / 2.0)) return rows.na("joint_dense", "m <= (1 - 1/r) n^2/2");
    if (js < 0) js = joint_size(g, r).count;
    // Explicit constant n^{r-1} / r^{r+5}.
    rows.floor("joint_dense", static_cast<double>(js), std::pow(n, rr - 1.0) / std::pow(rr, rr + 5.0), false, true,
               "r=3");
  });
  rows.guard("joint_vertex_spectral", false, [&] {
    if (!(spectral_ok && lambda > (1.0 - 1.0 / rr) * n)) return rows.na("joint_vertex_spectral", "lambda <= (1 - 1/r) n");
    if (js < 0) js = joint_size(g, r).count;
    rows.floor("joint_vertex_spectral", static_cast<double>(js), std::pow(n, rr - 1.0), false, false,
               "r=3, scale n^(r-1)");
  });
  rows.guard("clique_supersaturation", false, [&] {
    if (!above) return rows.na("clique_supersaturation", "lambda^2 <= (1 - 1/r) 2m");
    rows.floor("clique_supersaturation", static_cast<double>(clique_count(g, r + 1)), std::pow(m, (rr - 1.0) / 2.0),
               false, false, "r=3, scale m^((r-1)/2)");
  });
  rows.guard("joint_weights", false, [&] {
    if (!above) return rows.na("joint_weights", "lambda^2 <= (1 - 1/r) 2m");
    const auto wg = proof_weights_joint(g, cert, r);
    rows.floor("joint_weights", weighted_edge_density(wg), (rr - 1.0) / (2.0 * rr), true, false, "r=3");
  });
  rows.guard("kruskal_katona", true, [&] {
    for (int t : {3, 4}) {
      rows.ceiling("kruskal_katona", static_cast<double>(clique_count(g, t)),
                   kruskal_katona_bound(static_cast<std::int64_t>(g.m()), t) * (1.0 + 1e-12) + tol, true,
                   "t=" + std::to_string(t));
    }
  });

  const std::int64_t work = two_hop_work(g);
  const bool two_hop_ok = work <= kC4Budget;
  std::optional<std::int64_t> c4;
  rows.guard("c4_walk_identity", true, [&] {
    if (!two_hop_ok) return rows.na("c4_walk_identity", "two-hop work above budget");
    c4 = c.c4_override ? *c.c4_override : c4_count(g, C4Method::Codegree).value;
    const auto walks = c4_count(g, C4Method::Walks).value;
    std::string note = "walks vs codegree";
    bool ok = walks == *c4;
    if (g.n() <= kBruteC4Cap) {
      const auto brute = c4_count(g, C4Method::Brute).value;
      ok = ok && brute == *c4;
      note += ", brute " + std::to_string(brute);
    }
    rows.add("c4_walk_identity", static_cast<double>(walks), static_cast<double>(*c4),
             0.0 - std::abs(static_cast<double>(walks - *c4)) + 0.0, ok ? Verdict::Pass : Verdict::Fail, note);
  });
  rows.guard("c4_spectral_identity", true, [&] {
    if (!c4) return rows.na("c4_spectral_identity", "no exact count");
    if (g.n() > 200) return rows.na("c4_spectral_identity", "n > 200");
    const double raw = c4_count(g, C4Method::Trace).raw;
    const double gap = std::abs(raw - static_cast<double>(*c4));
    rows.add("c4_spectral_identity", raw, static_cast<double>(*c4), 0.4 - gap,
             gap <= 0.4 ? Verdict::Pass : Verdict::Fail, "within 0.4");
  });
  rows.guard("c4_density", false, [&] {
    if (!certified) return rows.na("c4_density", uncertified);
    if (!c4) return rows.na("c4_density", "no exact count");
    rows.floor("c4_density", static_cast<double>(*c4) / (m * m), 0.125, false, false);
  });

  const double M = static_cast<double>(degree_power(g));
  const double delta = static_cast<double>(g.max_degree());
  rows.guard("degree_power_bound", true, [&] {
    rows.ceiling("degree_power_bound", M, delta * m + 4.0 * std::pow(m, 1.7), true);
  });
  rows.guard("degree_power_ratio", false, [&] {
    if (!certified) return rows.na("degree_power_ratio", uncertified);
    rows.ceiling("degree_power_ratio", M / (m * m), 0.5, false);
  });
  rows.guard("max_degree", false, [&] {
    if (!certified) return rows.na("max_degree", uncertified);
    rows.ceiling("max_degree", delta, m / 2.0 + std::pow(m, 0.99), false);
  });

  std::optional<ShiftResult> shift;
  rows.guard("universal_shift", true, [&] {
    if (components(g).size() != 1) return rows.na("universal_shift", "graph is not connected");
    shift = universal_shift(g);
    const bool universal = shift->graph.degree(shift->hub) + 1 == shift->graph.n();
    const bool ok = universal && shift->rayleigh_after >= shift->rayleigh_before - tol;
    rows.add("universal_shift", shift->rayleigh_after, shift->rayleigh_before,
             shift->rayleigh_after - shift->rayleigh_before, ok ? Verdict::Pass : Verdict::Fail,
             "x^T A x after vs before");
  });
  rows.guard("matrix_bound", false, [&] {
    if (!shift) return rows.na("matrix_bound", "no shifted graph");
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < shift->graph.n(); ++v)
      if (v != shift->hub) rest.push_back(v);
    const double k = static_cast<double>(rest.size());
    if (!(k > m / 2.0)) return rows.na("matrix_bound", "k <= m/2");
    if (rest.size() > kMatrixCheckCap) return rows.na("matrix_bound", "k above size cap");
    const auto sub = induced(shift->graph, rest);
    const auto chk = matrix_bound_check(sub.graph, static_cast<std::int64_t>(g.m()), HypothesisMode::Relaxed);
    rows.ceiling("matrix_bound", chk.lambda_max, chk.bound, false, "relaxed hypothesis k > m/2");
  });
  rows.guard("dichotomy", false, [&] {
    if (!certified) return rows.na("dichotomy", uncertified);
    const auto d = structural_dichotomy(g, kDichotomyEps);
    rows.floor("dichotomy", d.lambda_sub, 0.8 * root, false, false,
               std::string(to_string(d.branch)) + ", t=" + std::to_string(d.t_used) + ", eps=0.1, target 0.8 sqrt(m)");
  });

  rows.guard("triangles", false, [&] {
    if (!certified) return rows.na("triangles", uncertified);
    rows.floor("triangles", static_cast<double>(triangle_count(g)), std::floor((root - 1.0) / 2.0), false, false);
  });
  rows.guard("triangular_floor", certified, [&] {
    if (!certified) return rows.na("triangular_floor", uncertified);
    rows.floor("triangular_floor", static_cast<double>(triangular_edges(g)), root / 72.0, true, true);
  });
  rows.guard("chordal_floor", certified, [&] {
    if (!certified) return rows.na("chordal_floor", uncertified);
    rows.floor("chordal_floor", static_cast<double>(chordal_lower_bound(g).edges), root / 72.0, false, true);
  });
  const bool k4_free = !has_clique(g, 4);
  rows.guard("k4_saturating", false, [&] {
    if (!certified) return rows.na("k4_saturating", uncertified);
    if (!k4_free) return rows.na("k4_saturating", "graph contains K4");
    if (work > kPairBudget) return rows.na("k4_saturating", "two-hop work above budget");
    rows.floor("k4_saturating", static_cast<double>(k4_saturating_edges(g)), m, false, false, "scale m");
  });
  rows.guard("kite_floor", certified, [&] {
    if (!certified) return rows.na("kite_floor", uncertified);
    const double b = std::ceil(root / 144.0);
    rows.floor("kite_floor", static_cast<double>(kite_count(g)), b * (b - 1.0) / 2.0, false, true);
  });

  int free_r = 0;
  for (int t = 2; t <= 4 && free_r == 0; ++t)
    if (!has_clique(g, t + 1)) free_r = t;
  rows.guard("degree_square", true, [&] {
    if (free_r == 0) return rows.na("degree_square", "contains K5");
    const double fr = free_r;
    rows.ceiling("degree_square", M, 2.0 * (1.0 - 1.0 / fr) * m * n * (1.0 + tol), true,
                 "K" + std::to_string(free_r + 1) + "-free");
  });
  rows.guard("signless_bound", true, [&] {
    if (free_r == 0) return rows.na("signless_bound", "contains K5");
    const double fr = free_r;
    rows.ceiling("signless_bound", signless_q(g), (1.0 - 1.0 / fr) * 2.0 * n * (1.0 + tol) + tol, true,
                 "K" + std::to_string(free_r + 1) + "-free");
  });
  rows.guard("degree_square_book_free", false, [&] {
    // Every graph is B_{2,k}-free for k = bk + 1; the claim needs m large
    // in terms of k, so this is a margin only.
    rows.ceiling("degree_square_book_free", M, m * n, false, "r=2, k=" + std::to_string(bk + 1));
  });

  if (c.predictions.empty()) {
    rows.na("construction_prediction", "not a construction");
  } else {
    for (const auto& p : c.predictions) {
      const auto& pr = p.prediction;
      double margin = 0.0;
      switch (pr.rel) {
        case Relation::Equal: margin = 0.0 - std::abs(p.observed - pr.value) + 0.0; break;
        case Relation::Greater:
        case Relation::AtLeast: margin = p.observed - pr.value; break;
        case Relation::AtMost: margin = pr.value - p.observed; break;
      }
      rows.add("construction_prediction", p.observed, pr.value, margin, p.pass ? Verdict::Pass : Verdict::Fail,
               pr.stat + " " + to_string(pr.rel));
    }
  }
  return rows.out;
}

std::vector<VerificationRow> verify_suite(const SuiteOptions& opts) {
  struct Task {
    std::string family;
    std::int64_t m;
  };
  std::vector<Task> tasks;
  for (const auto& f : opts.families)
    for (auto m : opts.m_values) tasks.push_back({f, m});
  std::vector<std::vector<VerificationRow>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto& t = tasks[i];
      try {
        results[i] = verify_graph(make_case(t.family, t.m, opts.seed, opts.search_steps), opts.tol);
      } catch (const std::exception& e) {
        results[i] = {{"case", t.family + "(m=" + std::to_string(t.m) + ")", 0.0, 0.0, 0.0, Verdict::ReportedOnly,
                       std::string("error: ") + e.what()}};
      }
    }
  };
  const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::vector<VerificationRow> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string aligned(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> width;
  for (const auto& row : cells) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::ostringstream os;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

}  // namespace

std::string rows_json(const std::vector<VerificationRow>& rows) {
  nlohmann::ordered_json j;
  j["schema"] = "nosal.verify/1";
  auto& arr = j["rows"] = nlohmann::ordered_json::array();
  std::size_t failed = 0;
  for (const auto& r : rows) {
    arr.push_back({{"claim", r.claim},
                   {"graph", r.graph},
                   {"observed", r.observed},
                   {"bound", r.bound},
                   {"margin", r.margin},
                   {"verdict", to_string(r.verdict)},
                   {"note", r.note}});
    failed += r.verdict == Verdict::Fail;
  }
  j["failed"] = failed;
  j["missing_claims"] = missing_claims(rows);
  return j.dump(2) + "\n";
}

std::string rows_csv(const std::vector<VerificationRow>& rows) {
  std::string s = "claim,graph,observed,bound,margin,verdict,note\n";
  for (const auto& r : rows)
    s += csv_field(r.claim) + "," + csv_field(r.graph) + "," + csv_number(r.observed) + "," + csv_number(r.bound) +
         "," + csv_number(r.margin) + "," + to_string(r.verdict) + "," + csv_field(r.note) + "\n";
  return s;
}

std::string rows_text(const std::vector<VerificationRow>& rows) {
  std::vector<std::vector<std::string>> cells{{"claim", "graph", "observed", "bound", "margin", "verdict", "note"}};
  for (const auto& r : rows)
    cells.push_back({r.claim, r.graph, fmt(r.observed), fmt(r.bound), fmt(r.margin), to_string(r.verdict), r.note});
  return aligned(cells);
}

std::int64_t largest_k2t(const Graph& g) {
  std::vector<std::int64_t> cnt(g.n(), 0);
  std::vector<Vertex> touched;
  std::int64_t best = 0;
  for (Vertex u = 0; u < g.n(); ++u) {
    for (Vertex w : g.neighbors(u))
      for (Vertex x : g.neighbors(w)) {
        if (x <= u) continue;
        if (cnt[x]++ == 0) touched.push_back(x);
      }
    for (Vertex x : touched) {
      best = std::max(best, cnt[x]);
      cnt[x] = 0;
    }
    touched.clear();
  }
  return best;
}

std::vector<Table1Row> table1_report(std::int64_t m, std::uint64_t seed, std::size_t search_steps) {
  if (m < 100) fail(ErrorKind::Argument, "table1_report needs m >= 100");
  std::vector<GraphCase> pool;
  auto offer = [&](GraphCase gc) {
    if (static_cast<std::int64_t>(gc.graph.m()) != m) return;
    if (is_nosal(gc.graph).kind != NosalKind::CertifiedYes) return;
    pool.push_back(std::move(gc));
  };
  offer(from_construction(clique_plus_star(m)));
  offer(from_construction(book_construction(m)));
  const std::pair<Objective, const char*> starts[] = {{Objective::MinBookRatio, "prism_start"},
                                                      {Objective::MinTriangularRatio, "k_st_plus_start"}};
  for (auto [o, name] : starts) {
    try {
      offer({std::string(name) + "(m=" + std::to_string(m) + ")", search_start(o, m), {}, {}});
    } catch (const Error&) {
    }
  }
  if (search_steps > 0)
    for (auto o : {Objective::MinBookRatio, Objective::MinC4Ratio, Objective::MinTriangularRatio}) {
      try {
        offer(make_case(std::string(kSearchPrefix) + to_string(o), m, seed, search_steps));
      } catch (const Error&) {
      }
    }
  if (pool.empty()) fail(ErrorKind::Infeasible, "no certified candidate at this m");

  const double md = static_cast<double>(m);
  const double root = std::sqrt(md);
  struct Quantity {
    const char* name;
    const char* scaling;
    double scale;
    const char* reference;
    std::function<double(const Graph&)> eval;
  };
  const std::string k3_ref = "floor((sqrt(m)-1)/2) = " + fmt(std::floor((root - 1.0) / 2.0));
  const std::vector<Quantity> quantities = {
      {"#K3", "sqrt(m)", root, k3_ref.c_str(), [](const Graph& g) { return double(triangle_count(g)); }},
      {"#C4", "m^2", md * md, "(1/8 - o(1)) m^2", [](const Graph& g) { return double(c4_count(g, C4Method::Codegree).value); }},
      {"booksize", "sqrt(m)", root, "Omega(sqrt(m))", [](const Graph& g) { return double(book_size(g).size); }},
      {"largest K_{2,t}", "sqrt(m)", root, "Omega(sqrt(m))", [](const Graph& g) { return double(largest_k2t(g)); }},
      {"#triangular edges", "sqrt(m)", root, "Omega(sqrt(m))",
       [](const Graph& g) { return double(triangular_edges(g)); }},
      {"chordal subgraph", "sqrt(m)", root, "Omega(sqrt(m))",
       [](const Graph& g) { return double(chordal_lower_bound(g).edges); }},
      {"#K4-saturating edges", "m", md, "Omega(m), K4-free graphs",
       [](const Graph& g) { return has_clique(g, 4) ? -1.0 : double(k4_saturating_edges(g)); }},
      {"#kites", "m", md, "Omega(m)", [](const Graph& g) { return double(kite_count(g)); }},
  };
  std::vector<Table1Row> out;
  for (const auto& q : quantities) {
    Table1Row row{q.name, "", -1.0, q.scaling, 0.0, q.reference};
    for (const auto& gc : pool) {
      const double v = q.eval(gc.graph);
      if (v < 0) continue;
      if (row.observed < 0 || v < row.observed) {
        row.observed = v;
        row.graph = gc.descriptor;
      }
    }
    if (row.observed < 0) {
      row.graph = "none";
      row.observed = 0.0;
    }
    row.normalized = row.observed / q.scale;
    out.push_back(std::move(row));
  }
  return out;
}

std::string table1_json(const std::vector<Table1Row>& rows, std::int64_t m) {
  nlohmann::ordered_json j;
  j["schema"] = "nosal.table1/1";
  j["m"] = m;
  auto& arr = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows)
    arr.push_back({{"quantity", r.quantity},
                   {"graph", r.graph},
                   {"observed", r.observed},
                   {"scaling", r.scaling},
                   {"normalized", r.normalized},
                   {"reference", r.reference}});
  return j.dump(2) + "\n";
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::string s = "quantity,graph,observed,scaling,normalized,reference\n";
  for (const auto& r : rows)
    s += csv_field(r.quantity) + "," + csv_field(r.graph) + "," + csv_number(r.observed) + "," +
         csv_field(r.scaling) + "," + csv_number(r.normalized) + "," + csv_field(r.reference) + "\n";
  return s;
}

std::string table1_text(const std::vector<Table1Row>& rows) {
  std::vector<std::vector<std::string>> cells{{"quantity", "observed", "scaling", "normalized", "reference", "graph"}};
  for (const auto& r : rows)
    cells.push_back({r.quantity, fmt(r.observed), r.scaling, fmt(r.normalized), r.reference, r.graph});
  return aligned(cells);
}

}  // namespace nosal
