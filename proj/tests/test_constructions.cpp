#include <doctest.h>

#include <cmath>

#include "nosal/constructions.hpp"
#include "nosal/counting.hpp"
#include "nosal/error.hpp"
#include "nosal/spectral.hpp"
#include "oracles.hpp"

using namespace nosal;

namespace {

void require_self_check(const ConstructionOutput& c) {
  for (const auto& chk : self_check(c)) {
    CAPTURE(c.name);
    CAPTURE(chk.prediction.stat);
    CAPTURE(chk.prediction.value);
    CAPTURE(chk.observed);
    CHECK(chk.pass);
  }
}

}  // namespace

TEST_CASE("isqrt") {
  for (std::int64_t x = 0; x < 5000; ++x) {
    auto r = isqrt(x);
    CHECK(r * r <= x);
    CHECK((r + 1) * (r + 1) > x);
  }
  CHECK(isqrt(std::int64_t{3037000499} * 3037000499) == 3037000499);
}

TEST_CASE("clique plus star") {
  auto c = clique_plus_star(20000);
  CHECK(c.params.at("s") == 143);
  CHECK(c.params.at("t") == 20000 - 143 * 142 / 2);
  CHECK(c.graph.m() == 20000);
  CHECK(c4_count(c.graph, C4Method::Codegree).value == 3 * 143LL * 142 * 141 * 140 / 24);

  int feasible = 0;
  for (std::int64_t m = 1; m <= 400; ++m) {
    try {
      auto g = clique_plus_star(m);
      ++feasible;
      require_self_check(g);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Infeasible);
    }
  }
  CHECK(feasible > 100);
  CHECK_THROWS_AS(clique_plus_star(2), Error);
}

TEST_CASE("clique with a supplied triangle-free graph") {
  // m = 16: s = 5, t = 6. Use C6 as H.
  auto c = clique_plus_graph(16, oracle::cycle(6));
  CHECK(c.graph.m() == 16);
  CHECK(c.graph.n() == 10);
  require_self_check(c);
  CHECK_THROWS_AS(clique_plus_graph(16, oracle::complete(4)), Error);  // wrong size and triangles
  CHECK_THROWS_AS(clique_plus_graph(16, oracle::star(5)), Error);      // 5 edges, not 6
}

TEST_CASE("K_{s,t} plus an edge") {
  auto c = k_st_plus(2, 1);
  CHECK(c.graph.m() == 3);
  CHECK(c.graph == oracle::complete(3));
  require_self_check(c);
  for (std::int64_t s = 2; s <= 14; ++s)
    for (std::int64_t t = 1; t <= 8; ++t) require_self_check(k_st_plus(s, t));

  // s = 2 ceil(sqrt m) + 1 style: m ~ 10^4 gives bk near sqrt(m)/2.
  auto big = k_st_plus(201, 50);
  CHECK(big.graph.m() == 10051);
  CHECK(book_size(big.graph).size == 50);
  CHECK(is_nosal(big.graph).kind == NosalKind::CertifiedYes);
}

TEST_CASE("prism blow-up") {
  auto k1 = prism_blowup(1);
  std::size_t parts[] = {2, 2, 2};
  CHECK(k1.graph == complete_multipartite(parts));
  CHECK(k1.graph.m() == 12);
  CHECK(book_size(k1.graph).size == 2);
  for (std::int64_t k = 1; k <= 12; ++k) require_self_check(prism_blowup(k));

  auto k100 = prism_blowup(100);
  CHECK(k100.graph.m() == 90003);
  const double ratio = static_cast<double>(book_size(k100.graph).size) / std::sqrt(90003.0);
  CHECK(ratio == doctest::Approx(101.0 / std::sqrt(90003.0)));
  CHECK(std::abs(ratio - 1.0 / 3.0) / (1.0 / 3.0) < 0.015);
  CHECK_THROWS_AS(prism_blowup(0), Error);
}

TEST_CASE("book construction and its core") {
  auto core = book_core(7);
  CHECK(core.graph.m() == 7);
  CHECK(spectral_radius(core.graph).lambda == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(c4_count(core.graph, C4Method::Brute).value == 3);
  require_self_check(core);

  for (std::int64_t m = 9; m <= 500; ++m) {
    auto c = book_construction(m);
    CHECK((m - c.params.at("t") - 1) % 2 == 0);
    CHECK(c.params.at("t") < isqrt(m) - 1);
    require_self_check(c);
  }

  auto big = book_construction(10001);
  CHECK(big.params.at("t") == 98);
  CHECK(big.params.at("q") == 4951);
  const double c4 = static_cast<double>(c4_count(big.graph, C4Method::Codegree).value);
  CHECK(c4 == 4951.0 * 4950.0 / 2.0);
  CHECK(c4 / (10001.0 * 10001.0) == doctest::Approx(0.125 - 0.25 / std::sqrt(10001.0)).epsilon(0.01));

  Graph without_chord = big.graph;
  without_chord.remove_edge(0, 1);
  CHECK(is_bipartite(without_chord).bipartite);
  CHECK_THROWS_AS(book_construction(8), Error);
}

TEST_CASE("Turan and multipartite graphs") {
  CHECK(turan(4, 2) == oracle::cycle(4));
  CHECK(turan(4, 2).m() == 4);
  CHECK(c4_count(turan(4, 2), C4Method::Brute).value == 1);
  auto t93 = turan(9, 3);
  CHECK(t93.m() == 27);
  CHECK(clique_count(t93, 4) == 0);
  require_self_check(generate("turan", {{"n", 11}, {"r", 4}}));
}

TEST_CASE("joint tightness graphs") {
  auto c = kpartite_plus_edge(3, 3);
  CHECK(c.graph.m() == 28);
  CHECK(clique_count(c.graph, 4) == 9);
  for (std::int64_t t = 2; t <= 6; ++t)
    for (std::int64_t r = 2; r <= 5; ++r) require_self_check(kpartite_plus_edge(t, r));

  for (std::int64_t r = 2; r <= 5; ++r)
    for (std::int64_t m = 20; m <= 200; m += 9) require_self_check(clique_joint_tight(m, r));
}

TEST_CASE("generic generator") {
  for (const auto& name : construction_names()) CHECK_FALSE(name.empty());
  auto c = generate("prism_blowup", {{"k", 3}});
  CHECK(c.graph.m() == 84);
  CHECK_THROWS_AS(generate("prism_blowup", {}), Error);
  CHECK_THROWS_AS(generate("nope", {}), Error);
}
