#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "nosal/constructions.hpp"
#include "nosal/counting.hpp"
#include "nosal/error.hpp"
#include "nosal/weighted.hpp"
#include "oracles.hpp"

using namespace nosal;

namespace {

WeightedGraph uniform(const Graph& g, double p) {
  WeightedGraph wg(g, std::vector<double>(g.n(), 1.0 / static_cast<double>(g.n())));
  for (const Edge& e : g.edges()) wg.set_p(e.u, e.v, p);
  return wg;
}

WeightedGraph random_weights(const Graph& g, std::mt19937_64& rng, double p_low) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(g.n());
  for (auto& x : w) x = u(rng);
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= s;
  WeightedGraph wg(g, w);
  for (const Edge& e : g.edges()) wg.set_p(e.u, e.v, p_low + (1.0 - p_low) * u(rng));
  return wg;
}

}  // namespace

TEST_CASE("weighted graph basics") {
  auto k5 = uniform(oracle::complete(5), 1.0);
  CHECK_NOTHROW(k5.validate());
  CHECK(weighted_edge_density(k5) == doctest::Approx((1.0 - 1.0 / 5) / 2));
  CHECK_THROWS_AS(k5.p(0, 0), Error);

  auto best = best_weighted_book_edge(k5);
  CHECK(best.edge == Edge{0, 1});
  CHECK(best.value == doctest::Approx(3.0 / 5.0));
  CHECK(best_weighted_joint_edge(k5, 2).value == doctest::Approx(best.value));

  auto zero = uniform(oracle::complete(5), 0.0);
  CHECK(weighted_edge_density(zero) == 0.0);
  CHECK_THROWS_AS(best_weighted_book_edge(zero), Error);

  WeightedGraph bad(oracle::complete(3), {0.5, 0.5, 0.5});
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("proof weights") {
  SUBCASE("clique: uniform entries give uniform p") {
    auto g = oracle::complete(11);
    auto cert = spectral_radius(g);
    auto wg = proof_weights_book(g, cert);
    wg.validate();
    const double p0 = wg.p(0, 1);
    CHECK(p0 > 0.0);
    for (const Edge& e : g.edges()) CHECK(wg.p(e.u, e.v) == doctest::Approx(p0).epsilon(1e-9));
  }

  SUBCASE("threshold and range on random certified graphs") {
    std::mt19937_64 rng(41);
    int certified = 0;
    for (int rep = 0; rep < 150; ++rep) {
      auto g = oracle::random_graph(6 + rep % 25, 0.25 + 0.004 * rep, rng);
      if (g.m() == 0) continue;
      auto cert = spectral_radius(g);
      if (is_nosal(g, cert).kind != NosalKind::CertifiedYes) continue;
      ++certified;
      auto wg = proof_weights_book(g, cert);
      CHECK_NOTHROW(wg.validate());
      const double m = static_cast<double>(g.m());
      for (const Edge& e : g.edges()) {
        const double xx = cert.perron[e.u] * cert.perron[e.v];
        const double p = wg.p(e.u, e.v);
        if (std::abs(xx - 0.25 / std::sqrt(m)) > 1e-12) CHECK((p > 0.0) == (xx > 0.25 / std::sqrt(m)));
      }
      CHECK(weighted_edge_density(wg) > 0.25);

      auto joint2 = proof_weights_joint(g, cert, 2);
      for (const Edge& e : g.edges()) CHECK(joint2.p(e.u, e.v) == wg.p(e.u, e.v));
    }
    CHECK(certified > 40);
  }

  SUBCASE("joint weights on the joint tightness graphs") {
    for (int r = 2; r <= 4; ++r) {
      auto c = clique_joint_tight(300, r);
      auto cert = spectral_radius(c.graph);
      auto wg = proof_weights_joint(c.graph, cert, r);
      wg.validate();
      CHECK(weighted_edge_density(wg) > (r - 1) / (2.0 * r));
      CHECK(best_weighted_joint_edge(wg, r).value > 0.0);
    }
  }

  SUBCASE("disconnected graph: weights live on the Perron component") {
    Graph g(8);
    for (Vertex u = 0; u < 4; ++u)
      for (Vertex v = u + 1; v < 4; ++v) g.add_edge(u, v);
    g.add_edge(5, 6);
    auto cert = spectral_radius(g);
    auto wg = proof_weights_book(g, cert);
    wg.validate();
    CHECK(wg.w(5) == 0.0);
    CHECK(wg.p(5, 6) == 0.0);
  }
}

TEST_CASE("weighted Edwards and joints conclusions on random instances") {
  std::mt19937_64 rng(43);
  int book_hits = 0, joint_hits = 0;
  for (int rep = 0; rep < 400; ++rep) {
    auto g = oracle::random_graph(5 + rep % 6, 0.75, rng);
    if (g.m() == 0) continue;
    auto wg = random_weights(g, rng, 0.6);
    const double density = weighted_edge_density(wg);
    if (density > 0.25) {
      ++book_hits;
      CHECK(best_weighted_book_edge(wg).value >= 1.0 / 6.0);
    }
  }
  // Denser instances clear the (r-1)/(2r) = 1/3 hypothesis for r = 3.
  for (int rep = 0; rep < 200; ++rep) {
    auto g = oracle::random_graph(6 + rep % 5, 0.92, rng);
    auto wg = random_weights(g, rng, 0.9);
    if (weighted_edge_density(wg) > 1.0 / 3.0) {
      ++joint_hits;
      CHECK(best_weighted_joint_edge(wg, 3).value > 0.0);
    }
  }
  CHECK(book_hits > 30);
  CHECK(joint_hits > 5);
}

TEST_CASE("best edge is invariant under relabeling") {
  std::mt19937_64 rng(47);
  for (int rep = 0; rep < 50; ++rep) {
    auto g = oracle::random_graph(9, 0.6, rng);
    if (g.m() == 0) continue;
    auto wg = random_weights(g, rng, 0.0);
    std::vector<Vertex> perm(g.n());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h(g.n());
    for (const Edge& e : g.edges()) h.add_edge(perm[e.u], perm[e.v]);
    std::vector<double> w(g.n());
    for (Vertex v = 0; v < g.n(); ++v) w[perm[v]] = wg.w(v);
    WeightedGraph wh(h, w);
    for (const Edge& e : g.edges()) wh.set_p(perm[e.u], perm[e.v], wg.p(e.u, e.v));
    CHECK(best_weighted_book_edge(wh).value == doctest::Approx(best_weighted_book_edge(wg).value));
    CHECK(best_weighted_joint_edge(wh, 3).value ==
          doctest::Approx(best_weighted_joint_edge(wg, 3).value));
  }
}

TEST_CASE("book witness from the proof pipeline") {
  auto prism = prism_blowup(50);
  auto cert = spectral_radius(prism.graph);
  auto wit = book_witness_from_proof(prism.graph, cert);
  CHECK(wit.density > 0.25);
  CHECK(wit.meets_floor);
  CHECK(static_cast<double>(wit.book.size()) >= std::sqrt(static_cast<double>(prism.graph.m())) / 144.0);
  for (Vertex k : wit.book) {
    CHECK(prism.graph.has_edge(wit.edge.u, k));
    CHECK(prism.graph.has_edge(wit.edge.v, k));
  }

  auto kst = k_st_plus(9, 4);
  auto w2 = book_witness_from_proof(kst.graph, spectral_radius(kst.graph));
  CHECK(w2.edge == Edge{0, 1});

  for (std::size_t s = 4; s <= 12; ++s) {
    auto k = oracle::complete(s);
    CHECK(book_witness_from_proof(k, spectral_radius(k)).book.size() == s - 2);
  }

  auto c8 = oracle::cycle(8);
  CHECK_THROWS_AS(book_witness_from_proof(c8, spectral_radius(c8)), Error);
}

TEST_CASE("random blowup") {
  auto k4 = uniform(oracle::complete(4), 1.0);
  auto full = random_blowup(k4, 40, 1);
  CHECK(full.n() == 40);
  CHECK(full.m() == 6 * 10 * 10);
  CHECK(blowup_expected_edges(k4, 40) == 600.0);
  CHECK(random_blowup(uniform(oracle::complete(4), 0.0), 40, 1).m() == 0);

  auto c = prism_blowup(4);
  auto wg = proof_weights_book(c.graph, spectral_radius(c.graph));
  CHECK(random_blowup(wg, 500, 9) == random_blowup(wg, 500, 9));

  const std::size_t N = 1000;
  double mean = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    mean += static_cast<double>(random_blowup(wg, N, seed).m());
  mean /= 100.0;
  CHECK(std::abs(mean - blowup_expected_edges(wg, N)) <= 2.0 * std::pow(N, 1.5));
}
