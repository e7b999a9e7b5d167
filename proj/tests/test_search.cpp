#include <doctest.h>

#include <cmath>
#include <random>

#include "nosal/constructions.hpp"
#include "nosal/counting.hpp"
#include "nosal/error.hpp"
#include "nosal/search.hpp"
#include "nosal/spectral.hpp"
#include "oracles.hpp"

using namespace nosal;

namespace {

// Some K_r v I_k uses {c, d}: either both ends lie in the clique, or one end
// lies in the clique and the other in the common neighborhood.
bool brute_book_through(const Graph& g, Vertex c, Vertex d, int r, int k) {
  const auto n = static_cast<Vertex>(g.n());
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) != r) continue;
    std::vector<Vertex> K;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1U) K.push_back(v);
    bool clique = true;
    for (std::size_t i = 0; i < K.size() && clique; ++i)
      for (std::size_t j = i + 1; j < K.size(); ++j)
        if (!g.has_edge(K[i], K[j])) clique = false;
    if (!clique) continue;
    std::vector<Vertex> common;
    for (Vertex v = 0; v < n; ++v) {
      if (mask >> v & 1U) continue;
      bool all = true;
      for (Vertex u : K) all = all && g.has_edge(u, v);
      if (all) common.push_back(v);
    }
    if (static_cast<int>(common.size()) < k) continue;
    const bool hc = mask >> c & 1U, hd = mask >> d & 1U;
    auto in_common = [&](Vertex v) { return std::find(common.begin(), common.end(), v) != common.end(); };
    if ((hc && hd) || (hc && in_common(d)) || (hd && in_common(c))) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("objective names") {
  for (auto o : {Objective::MinBookRatio, Objective::MinC4Ratio, Objective::MinTriangularRatio,
                 Objective::MaxLambdaBookFree})
    CHECK(objective_from_string(to_string(o)) == o);
  CHECK_THROWS_AS(objective_from_string("max_bk"), Error);
}

TEST_CASE("incremental lambda") {
  SUBCASE("identity move reproduces the spectral radius") {
    auto g = oracle::complete(6);
    auto cert = spectral_radius(g);
    auto up = incremental_lambda(g, EdgeSwap{Edge{0, 1}, Edge{0, 1}}, cert.perron);
    CHECK(up.lambda == doctest::Approx(5.0).epsilon(1e-9));
    CHECK_FALSE(up.cold_start);
  }
  SUBCASE("swap between a clique and an isolated edge") {
    Graph g(8);
    for (Vertex u = 0; u < 5; ++u)
      for (Vertex v = u + 1; v < 5; ++v) g.add_edge(u, v);
    g.add_edge(5, 6);
    auto cert = spectral_radius(g);
    auto up = incremental_lambda(g, EdgeSwap{Edge{5, 6}, Edge{6, 7}}, cert.perron);
    CHECK(up.lambda == doctest::Approx(4.0).epsilon(1e-8));
    auto back = incremental_lambda(g, EdgeSwap{Edge{0, 1}, Edge{6, 7}}, cert.perron);
    Graph h = g;
    h.remove_edge(0, 1);
    h.add_edge(6, 7);
    CHECK(back.lambda == doctest::Approx(spectral_radius(h).lambda).epsilon(1e-8));
    CHECK_THROWS_AS(incremental_lambda(g, EdgeSwap{Edge{0, 7}, Edge{6, 7}}, cert.perron), Error);
  }
  SUBCASE("random swaps on the book construction") {
    auto g = book_construction(5001).graph;
    auto x = spectral_radius(g).perron;
    std::mt19937_64 rng(71);
    auto edges = g.edges();
    std::uniform_int_distribution<std::size_t> pick_e(0, edges.size() - 1);
    std::uniform_int_distribution<Vertex> pick_v(0, static_cast<Vertex>(g.n() - 1));
    int agree = 0, total = 0;
    for (int rep = 0; rep < 1000; ++rep) {
      const Edge rem = edges[pick_e(rng)];
      Vertex c = pick_v(rng), d = pick_v(rng);
      if (c == d || g.has_edge(c, d)) continue;
      Graph h = g;
      h.remove_edge(rem.u, rem.v);
      h.add_edge(c, d);
      const double cold = spectral_radius(h).lambda;
      const double warm = incremental_lambda(g, EdgeSwap{rem, Edge::of(c, d)}, x).lambda;
      ++total;
      if (std::abs(cold - warm) <= 1e-6) ++agree;
    }
    REQUIRE(total > 900);
    CHECK(agree >= 0.99 * total);
  }
}

TEST_CASE("book through an edge") {
  CHECK(book_through_edge(oracle::complete(4), 0, 1, 2, 2));
  CHECK_FALSE(book_through_edge(oracle::complete(4), 0, 1, 2, 3));
  CHECK(book_through_edge(oracle::complete(5), 0, 1, 3, 2));
  CHECK_FALSE(book_through_edge(oracle::cycle(5), 0, 1, 2, 1));

  std::mt19937_64 rng(73);
  int positives = 0;
  for (int rep = 0; rep < 600; ++rep) {
    auto g = oracle::random_graph(5 + rep % 6, 0.55, rng);
    auto edges = g.edges();
    if (edges.empty()) continue;
    const Edge e = edges[rep % edges.size()];
    const int r = 2 + rep % 3, k = 1 + rep % 3;
    const bool got = book_through_edge(g, e.u, e.v, r, k);
    CHECK(got == brute_book_through(g, e.u, e.v, r, k));
    positives += got;
  }
  CHECK(positives > 50);
}

TEST_CASE("start graphs") {
  for (std::int64_t m : {400, 2001, 9804}) {
    for (auto o : {Objective::MinBookRatio, Objective::MinC4Ratio, Objective::MinTriangularRatio}) {
      auto g = search_start(o, m);
      CHECK(static_cast<std::int64_t>(g.m()) == m);
      CHECK(is_nosal(g).kind == NosalKind::CertifiedYes);
    }
    for (int r : {2, 3, 4}) {
      auto g = search_start(Objective::MaxLambdaBookFree, m, r);
      CHECK(static_cast<std::int64_t>(g.m()) == m);
      CHECK(clique_count(g, r + 1) == 0);
    }
  }
}

TEST_CASE("annealing keeps its invariants") {
  for (auto o : {Objective::MinBookRatio, Objective::MinC4Ratio, Objective::MinTriangularRatio}) {
    SearchConfig cfg;
    cfg.m = 900;
    cfg.objective = o;
    cfg.steps = 4000;
    cfg.seed = 5;
    cfg.restarts = 2;
    cfg.certify_every = 500;
    auto rec = extremal_search(cfg);
    CAPTURE(to_string(o));
    CHECK(rec.minimize);
    CHECK(rec.best_graph.m() == 900);
    CHECK(rec.certified);
    CHECK(rec.best_value <= rec.initial_value + 1e-12);
    CHECK(rec.best_value == doctest::Approx(objective_value(o, rec.best_graph)));
    CHECK(rec.trace.size() == 50);
    for (std::size_t i = 1; i < rec.trace.size(); ++i) CHECK(rec.trace[i] <= rec.trace[i - 1] + 1e-12);
    const double root = std::sqrt(900.0);
    if (o == Objective::MinBookRatio) CHECK(rec.best_value * root > root / 144.0);
    if (o == Objective::MinTriangularRatio) CHECK(rec.best_value * root > root / 72.0);
    // The 0.12 level is a claim at m near 10^4; here 1/8 - 1/(4 sqrt m) is 0.117.
    if (o == Objective::MinC4Ratio) CHECK(rec.best_value >= 0.1);

    auto again = extremal_search(cfg);
    CHECK(again.best_graph == rec.best_graph);
    CHECK(again.restart == rec.restart);
    cfg.threads = 2;
    CHECK(extremal_search(cfg).best_graph == rec.best_graph);
  }
}

TEST_CASE("book-free maximization") {
  SearchConfig cfg;
  cfg.m = 300;
  cfg.objective = Objective::MaxLambdaBookFree;
  cfg.r = 3;
  cfg.k = 2;
  cfg.steps = 3000;
  cfg.seed = 9;
  auto rec = extremal_search(cfg);
  CHECK_FALSE(rec.minimize);
  CHECK(rec.best_value >= rec.initial_value - 1e-12);
  CHECK(rec.best_graph.m() == 300);
  for (const Edge& e : rec.best_graph.edges()) {
    if (book_through_edge(rec.best_graph, e.u, e.v, 3, 2)) {
      FAIL("B_{3,2} copy survived");
      break;
    }
  }
}

TEST_CASE("search arguments") {
  SearchConfig cfg;
  CHECK_THROWS_AS(extremal_search(cfg), Error);
  cfg.m = 100;
  cfg.decay = 1.5;
  CHECK_THROWS_AS(extremal_search(cfg), Error);
  cfg.decay = 0.0;
  cfg.n_max = 3;
  CHECK_THROWS_AS(extremal_search(cfg), Error);
}
