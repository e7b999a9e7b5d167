#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <string>
#include <vector>

#include "nosal/nosal.h"

extern "C" int nosal_c_smoke(void);

namespace {

using nlohmann::json;

// Owns a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  nosal_string_free(s);
  return out;
}

struct Handle {
  nosal_graph* g = nullptr;
  ~Handle() { nosal_graph_free(g); }
};

}  // namespace

TEST_CASE("the header compiles as C") { CHECK(nosal_c_smoke() == 0); }

TEST_CASE("graph handles") {
  Handle h;
  REQUIRE(nosal_graph_new(3, &h.g) == NOSAL_OK);
  int added = 0;
  CHECK(nosal_graph_add_edge(h.g, 0, 1, &added) == NOSAL_OK);
  CHECK(added == 1);
  CHECK(nosal_graph_add_edge(h.g, 1, 0, &added) == NOSAL_OK);
  CHECK(added == 0);
  CHECK(nosal_graph_add_edge(h.g, 1, 2, nullptr) == NOSAL_OK);
  CHECK(nosal_graph_add_edge(h.g, 0, 2, nullptr) == NOSAL_OK);
  CHECK(nosal_graph_m(h.g) == 3);

  char* g6 = nullptr;
  REQUIRE(nosal_graph_to_graph6(h.g, &g6) == NOSAL_OK);
  CHECK(take(g6) == "Bw");

  std::vector<uint32_t> pairs(6);
  size_t count = 0;
  CHECK(nosal_graph_edges(h.g, pairs.data(), 3, &count) == NOSAL_OK);
  CHECK(count == 3);
  CHECK(pairs == std::vector<uint32_t>{0, 1, 0, 2, 1, 2});

  CHECK(nosal_graph_add_edge(h.g, 1, 1, nullptr) != NOSAL_OK);
  CHECK(std::string(nosal_last_error()).size() > 0);
  CHECK(nosal_graph_add_edge(h.g, 0, 7, nullptr) == NOSAL_ERR_INDEX);
  int present = 0;
  CHECK(nosal_graph_has_edge(h.g, 2, 0, &present) == NOSAL_OK);
  CHECK(present == 1);
  CHECK(std::string(nosal_last_error()).empty());
  int removed = 0;
  CHECK(nosal_graph_remove_edge(h.g, 0, 2, &removed) == NOSAL_OK);
  CHECK(removed == 1);
  CHECK(nosal_graph_m(h.g) == 2);
  CHECK(nosal_graph_new(1, nullptr) == NOSAL_ERR_ARGUMENT);
}

TEST_CASE("parsing picks the format") {
  Handle a, b, c;
  REQUIRE(nosal_graph_parse("Bw\n", &a.g) == NOSAL_OK);
  CHECK(nosal_graph_m(a.g) == 3);
  REQUIRE(nosal_graph_parse("0 1\n1 2\n0 2\n", &b.g) == NOSAL_OK);
  CHECK(nosal_graph_m(b.g) == 3);
  REQUIRE(nosal_graph_parse(">>graph6<<Bw", &c.g) == NOSAL_OK);
  CHECK(nosal_graph_n(c.g) == 3);
  nosal_graph* bad = nullptr;
  CHECK(nosal_graph_parse("   ", &bad) == NOSAL_ERR_PARSE);
  CHECK(nosal_graph_from_graph6("B\x01", &bad) != NOSAL_OK);
  CHECK(bad == nullptr);

  char* el = nullptr;
  REQUIRE(nosal_graph_to_edge_list(a.g, &el) == NOSAL_OK);
  CHECK(take(el) == "3 3\n0 1\n0 2\n1 2\n");
}

TEST_CASE("generation and invariants") {
  Handle h;
  char* info = nullptr;
  REQUIRE(nosal_generate("book_core", R"({"m": 101})", &h.g, &info) == NOSAL_OK);
  auto j = json::parse(take(info));
  CHECK(j["schema"] == "nosal.construction/1");
  CHECK(j["m"] == 101);
  CHECK(j["all_pass"] == true);

  double lambda = 0;
  REQUIRE(nosal_spectral_radius(h.g, 0, &lambda) == NOSAL_OK);
  CHECK(lambda == doctest::Approx((1 + std::sqrt(4.0 * 101 - 3)) / 2).epsilon(1e-12));
  int kind = -1;
  CHECK(nosal_is_nosal(h.g, &kind) == NOSAL_OK);
  CHECK(kind == 0);
  int64_t bk = 0;
  CHECK(nosal_book_size(h.g, &bk) == NOSAL_OK);
  CHECK(bk == 50);
  int64_t walks = 0, codeg = 0;
  CHECK(nosal_c4_count(h.g, 0, &codeg) == NOSAL_OK);
  CHECK(nosal_c4_count(h.g, 1, &walks) == NOSAL_OK);
  CHECK(codeg == walks);
  CHECK(codeg == 50 * 49 / 2);
  CHECK(nosal_c4_count(h.g, 9, &walks) == NOSAL_ERR_ARGUMENT);

  char* a = nullptr;
  REQUIRE(nosal_analyze(h.g, 3, 4, 0, &a) == NOSAL_OK);
  auto r = json::parse(take(a));
  CHECK(r["schema"] == "nosal.analyze/1");
  CHECK(r["book_size"]["size"] == 50);
  CHECK(r["spectral"]["nosal"] == "CertifiedYes");
  CHECK(r["triangles"] == 50);

  nosal_graph* none = nullptr;
  CHECK(nosal_generate("no_such", "{}", &none, nullptr) == NOSAL_ERR_ARGUMENT);
  CHECK(nosal_generate("book_core", "{m: 3", &none, nullptr) == NOSAL_ERR_PARSE);

  char* names = nullptr;
  REQUIRE(nosal_construction_names(&names) == NOSAL_OK);
  CHECK(json::parse(take(names)).size() >= 8);
}

TEST_CASE("weights, blowup and dichotomy") {
  Handle h;
  REQUIRE(nosal_generate("clique_plus_star", R"({"m": 60})", &h.g, nullptr) == NOSAL_OK);
  char* w = nullptr;
  REQUIRE(nosal_proof_weights(h.g, 2, &w) == NOSAL_OK);
  const auto wtext = take(w);
  auto wj = json::parse(wtext);
  CHECK(wj["density"].get<double>() > 0.25);
  CHECK(wj["w"].size() == nosal_graph_n(h.g));
  CHECK(wj["p"].size() == nosal_graph_m(h.g));

  char* b1 = nullptr;
  char* b2 = nullptr;
  Handle g1, g2;
  REQUIRE(nosal_blowup(wtext.c_str(), 50, 7, &b1, &g1.g) == NOSAL_OK);
  REQUIRE(nosal_blowup(wtext.c_str(), 50, 7, &b2, &g2.g) == NOSAL_OK);
  const auto s1 = take(b1);
  CHECK(s1 == take(b2));
  CHECK(json::parse(s1)["m"] == nosal_graph_m(g1.g));
  CHECK(nosal_blowup(R"({"w": [1.0], "p": {"0-4": 1}})", 10, 1, nullptr, nullptr) == NOSAL_ERR_INDEX);
  CHECK(nosal_blowup(R"({"w": [0.5, 0.5]})", 10, 1, nullptr, nullptr) == NOSAL_ERR_PARSE);

  Handle sub;
  char* d = nullptr;
  REQUIRE(nosal_dichotomy(h.g, 0.1, &d, &sub.g) == NOSAL_OK);
  auto dj = json::parse(take(d));
  CHECK(dj["sub_m"] == nosal_graph_m(sub.g));
  CHECK(dj["trace"].is_array());

  Handle path;
  REQUIRE(nosal_graph_parse("0 1\n1 2\n2 3\n", &path.g) == NOSAL_OK);
  CHECK(nosal_proof_weights(path.g, 2, &w) == NOSAL_ERR_PRECONDITION);
}

TEST_CASE("search and verification") {
  const char* cfg = R"({"objective": "min_bk_ratio", "m": 300, "steps": 400, "seed": 3})";
  char* r1 = nullptr;
  char* r2 = nullptr;
  Handle best;
  REQUIRE(nosal_search(cfg, &r1, &best.g) == NOSAL_OK);
  REQUIRE(nosal_search(cfg, &r2, nullptr) == NOSAL_OK);
  const auto s1 = take(r1);
  CHECK(s1 == take(r2));
  auto j = json::parse(s1);
  CHECK(j["certified"] == true);
  CHECK(j["edges"] == 300);
  Handle decoded;
  REQUIRE(nosal_graph_from_graph6(j["graph6"].get<std::string>().c_str(), &decoded.g) == NOSAL_OK);
  CHECK(nosal_graph_m(decoded.g) == nosal_graph_m(best.g));
  CHECK(nosal_search(R"({"objective": "max_fun", "m": 10})", &r1, nullptr) == NOSAL_ERR_ARGUMENT);

  char* rows = nullptr;
  int failed = -1;
  REQUIRE(nosal_verify_graph(best.g, "best", 0, "csv", &rows, &failed) == NOSAL_OK);
  CHECK(failed == 0);
  CHECK(take(rows).rfind("claim,", 0) == 0);

  REQUIRE(nosal_verify_suite(R"({"families": ["book_construction"], "m_values": [201]})", "json", &rows, &failed) ==
          NOSAL_OK);
  auto v = json::parse(take(rows));
  CHECK(v["schema"] == "nosal.verify/1");
  CHECK(failed == 0);
  CHECK(nosal_verify_suite("{}", "json", &rows, &failed) == NOSAL_ERR_PARSE);
  CHECK(nosal_verify_suite(R"({"m_values": [201]})", "yaml", &rows, &failed) == NOSAL_ERR_ARGUMENT);

  char* t = nullptr;
  REQUIRE(nosal_table1(400, 1, 0, "text", &t) == NOSAL_OK);
  CHECK(take(t).find("#C4") != std::string::npos);
  CHECK(nosal_table1(10, 1, 0, "json", &t) != NOSAL_OK);
}

TEST_CASE("status names") {
  CHECK(std::string(nosal_status_name(NOSAL_OK)) == "ok");
  CHECK(std::string(nosal_status_name(NOSAL_ERR_CODEC)) == "codec");
  CHECK(std::string(nosal_status_name(NOSAL_ERR_INTERNAL)) == "internal");
  CHECK(std::string(nosal_version()).size() > 0);
}
