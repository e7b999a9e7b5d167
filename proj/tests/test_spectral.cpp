#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "nosal/spectral.hpp"
#include "oracles.hpp"

using namespace nosal;

namespace {

// K_2 joined to an independent set of size s.
Graph k2_join(std::size_t s) {
  Graph g(s + 2);
  g.add_edge(0, 1);
  for (Vertex v = 2; v < s + 2; ++v) {
    g.add_edge(0, v);
    g.add_edge(1, v);
  }
  return g;
}

}  // namespace

TEST_CASE("spectral radius of standard graphs") {
  for (std::size_t s = 2; s <= 8; ++s)
    CHECK(spectral_radius(oracle::complete(s)).lambda ==
          doctest::Approx(static_cast<double>(s - 1)).epsilon(1e-10));
  CHECK(spectral_radius(k2_join(3)).lambda == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(spectral_radius(oracle::cycle(4)).lambda == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(spectral_radius(oracle::star(16)).lambda == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("certificate invariants") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    auto g = oracle::random_graph(5 + rep % 30, 0.2, rng);
    if (g.m() == 0) continue;
    auto cert = spectral_radius(g);
    double nrm = 0.0;
    for (double v : cert.perron) {
      CHECK(v >= 0.0);
      nrm += v * v;
    }
    CHECK(std::abs(std::sqrt(nrm) - 1.0) <= 1e-12);
    CHECK(cert.residual <= 1e-10);
    CHECK(cert.iterations < 5000);
    CHECK(cert.rational_lower_bound.approx <= cert.lambda + cert.residual * g.n() + 1e-12);
  }
}

TEST_CASE("disconnected graphs use the winning component") {
  Graph g(9);
  g.add_edge(0, 1);  // K2, lambda 1
  for (Vertex i = 3; i < 7; ++i)
    for (Vertex j = i + 1; j < 7; ++j) g.add_edge(i, j);  // K4 on 3..6
  auto cert = spectral_radius(g);
  CHECK(cert.lambda == doctest::Approx(3.0));
  CHECK(cert.component == std::vector<Vertex>{3, 4, 5, 6});
  CHECK(cert.perron[0] == 0.0);
  CHECK(cert.perron[8] == 0.0);

  Graph tie(4);
  tie.add_edge(2, 3);
  tie.add_edge(0, 1);
  CHECK(spectral_radius(tie).component == std::vector<Vertex>{0, 1});
}

TEST_CASE("non-convergence carries the best iterate") {
  std::mt19937_64 rng(1);
  auto g = oracle::random_graph(30, 0.3, rng);
  try {
    spectral_radius(g, {.tol = 1e-300, .max_iters = 3});
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(e.kind() == ErrorKind::Convergence);
    CHECK(e.best().perron.size() == g.n());
    CHECK(e.best().lambda > 0.0);
  }
}

TEST_CASE("Nosal certification") {
  for (std::size_t leaves : {1, 4, 9, 25, 100}) {
    auto v = is_nosal(oracle::star(leaves));
    CHECK(v.kind != NosalKind::CertifiedYes);
  }
  CHECK(is_nosal(oracle::complete(2)).kind != NosalKind::CertifiedYes);
  CHECK(is_nosal(oracle::complete(5)).kind == NosalKind::CertifiedYes);
  CHECK(is_nosal(oracle::cycle(8)).kind == NosalKind::NumericallyNo);
  CHECK_THROWS_AS(is_nosal(Graph(3)), Error);

  SUBCASE("CertifiedYes is sound against the dense eigensolver") {
    std::mt19937_64 rng(17);
    int certified = 0;
    for (int rep = 0; rep < 150; ++rep) {
      auto g = oracle::random_graph(4 + rep % 20, 0.15 + 0.005 * rep, rng);
      if (g.m() == 0) continue;
      auto v = is_nosal(g);
      if (v.kind != NosalKind::CertifiedYes) continue;
      ++certified;
      CHECK(full_spectrum(g).front() > std::sqrt(static_cast<double>(g.m())));
    }
    CHECK(certified > 50);
  }
}

TEST_CASE("full spectrum") {
  auto c4 = full_spectrum(oracle::cycle(4));
  std::vector<double> c4_expected{2, 0, 0, -2};
  for (int i = 0; i < 4; ++i) CHECK(c4[i] == doctest::Approx(c4_expected[i]).scale(1.0));
  auto k4 = full_spectrum(oracle::complete(4));
  std::vector<double> k4_expected{3, -1, -1, -1};
  for (int i = 0; i < 4; ++i) CHECK(k4[i] == doctest::Approx(k4_expected[i]));

  CHECK_THROWS_AS(full_spectrum(oracle::cycle(30), 20), Error);

  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 30; ++rep) {
    auto g = oracle::random_graph(10 + rep, 0.3, rng);
    auto ev = full_spectrum(g);
    double s1 = 0.0, s2 = 0.0;
    for (double l : ev) {
      s1 += l;
      s2 += l * l;
    }
    CHECK(std::abs(s1) <= 1e-6);
    CHECK(std::abs(s2 - 2.0 * g.m()) <= 1e-6 * g.n());
    if (g.m() > 0) CHECK(ev.front() == doctest::Approx(spectral_radius(g).lambda).epsilon(1e-8));
  }

  SUBCASE("bipartite spectra are symmetric") {
    for (int rep = 0; rep < 10; ++rep) {
      auto h = oracle::random_graph(12, 0.5, rng);
      std::vector<Vertex> a, b;
      for (Vertex v = 0; v < 12; ++v) (v % 2 ? a : b).push_back(v);
      auto bip = bipartite_induced(h, a, b).graph;
      auto ev = full_spectrum(bip);
      for (std::size_t i = 0; i < ev.size(); ++i)
        CHECK(std::abs(ev[i] + ev[ev.size() - 1 - i]) <= 1e-7);
    }
  }
}

TEST_CASE("walk traces") {
  auto c4 = walk_traces(oracle::cycle(4));
  CHECK(c4.tr2 == 8);
  CHECK(c4.tr3 == 0);
  CHECK(c4.tr4 == 32);
  auto k3 = walk_traces(oracle::complete(3));
  CHECK(k3.tr2 == 6);
  CHECK(k3.tr3 == 6);
  CHECK(k3.tr4 == 18);
  auto e = walk_traces(Graph(5));
  CHECK(e.tr2 == 0);
  CHECK(e.tr3 == 0);
  CHECK(e.tr4 == 0);

  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 20; ++rep) {
    auto g = oracle::random_graph(20 + 5 * rep, 0.2, rng);
    auto t = walk_traces(g);
    auto ev = full_spectrum(g);
    double p3 = 0.0, p4 = 0.0;
    for (double l : ev) {
      p3 += l * l * l;
      p4 += l * l * l * l;
    }
    CHECK(std::abs(p3 - static_cast<double>(t.tr3)) <= 1e-5 * g.n());
    CHECK(std::abs(p4 - static_cast<double>(t.tr4)) <= 1e-5 * g.n());
    CHECK(t.tr3 == 6 * oracle::brute_triangles(g));
  }
}

TEST_CASE("signless Laplacian radius") {
  // (3,1,1,1) is a positive eigenvector of D + A for K_{1,3} with eigenvalue 4.
  CHECK(signless_q(oracle::star(3)) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(signless_q(oracle::complete(2)) == doctest::Approx(2.0).epsilon(1e-10));
  // Regular graphs: q = 2d.
  CHECK(signless_q(oracle::complete(6)) == doctest::Approx(10.0).epsilon(1e-10));
  CHECK(signless_q(oracle::complete_bipartite(3, 3)) == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("Hofmeister and Rayleigh bounds") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    auto g = oracle::random_graph(3 + rep % 40, 0.1 + 0.008 * rep, rng);
    if (g.m() == 0) continue;
    const double lambda = spectral_radius(g).lambda;
    double deg_sq = 0.0;
    for (auto d : g.degrees()) deg_sq += static_cast<double>(d * d);
    const double n = static_cast<double>(g.n()), m = static_cast<double>(g.m());
    CHECK(lambda * lambda >= deg_sq / n - 1e-9);
    CHECK(lambda >= 2.0 * m / n - 1e-9);
    CHECK(lambda <= std::sqrt(2.0 * m) + 1e-9);
  }
}
