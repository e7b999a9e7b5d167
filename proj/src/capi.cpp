#include "nosal/nosal.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <new>
#include <string>

#include "nosal/constructions.hpp"
#include "nosal/counting.hpp"
#include "nosal/dichotomy.hpp"
#include "nosal/error.hpp"
#include "nosal/graph_io.hpp"
#include "nosal/harness.hpp"
#include "nosal/search.hpp"
#include "nosal/spectral.hpp"
#include "nosal/weighted.hpp"

struct nosal_graph {
  nosal::Graph g;
};

namespace {

using nlohmann::json;
using namespace nosal;

thread_local std::string last_error;

nosal_status set_error(nosal_status s, const char* what) {
  last_error = what;
  return s;
}

// Runs f, mapping exceptions to status codes.
template <class F>
nosal_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return NOSAL_OK;
  } catch (const Error& e) {
    return set_error(static_cast<nosal_status>(e.kind()), e.what());
  } catch (const json::exception& e) {
    return set_error(NOSAL_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(NOSAL_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return set_error(NOSAL_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(NOSAL_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* name) {
  if (!p) fail(ErrorKind::Argument, std::string(name) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

void emit(char** out, const json& j) { emit(out, j.dump(2) + "\n"); }

nosal_graph* wrap(Graph g) { return new nosal_graph{std::move(g)}; }

void give(nosal_graph** out, Graph g) {
  if (out) *out = wrap(std::move(g));
}

json edge_json(const std::optional<Edge>& e) {
  if (!e) return nullptr;
  return json::array({e->u, e->v});
}

json rational_json(const ExactRational& r) {
  return {{"numerator", r.numerator}, {"denominator", r.denominator}, {"approx", r.approx}};
}

std::string format_of(const char* format) {
  const std::string f = format ? format : "json";
  if (f != "json" && f != "csv" && f != "text") fail(ErrorKind::Argument, "unknown format: " + f);
  return f;
}

std::string rows_in(const std::vector<VerificationRow>& rows, const char* format) {
  const std::string f = format_of(format);
  if (f == "json") return rows_json(rows);
  if (f == "csv") return rows_csv(rows);
  return rows_text(rows);
}

int failed_rows(const std::vector<VerificationRow>& rows) {
  int n = 0;
  for (const auto& r : rows) n += r.verdict == Verdict::Fail;
  return n;
}

std::string pair_key(Vertex u, Vertex v) { return std::to_string(u) + "-" + std::to_string(v); }

WeightedGraph weights_from_json(const json& j) {
  if (!j.is_object() || !j.contains("w") || !j.contains("p"))
    fail(ErrorKind::Parse, "weighted graph needs \"w\" and \"p\"");
  auto w = j.at("w").get<std::vector<double>>();
  Graph base(w.size());
  std::vector<std::pair<Edge, double>> ps;
  for (const auto& [key, val] : j.at("p").items()) {
    const auto dash = key.find('-');
    if (dash == std::string::npos) fail(ErrorKind::Parse, "bad edge key: " + key);
    std::size_t a = 0, b = 0;
    try {
      a = std::stoul(key.substr(0, dash));
      b = std::stoul(key.substr(dash + 1));
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "bad edge key: " + key);
    }
    if (a >= w.size() || b >= w.size()) fail(ErrorKind::Index, "edge key out of range: " + key);
    base.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
    ps.push_back({Edge::of(static_cast<Vertex>(a), static_cast<Vertex>(b)), val.get<double>()});
  }
  WeightedGraph wg(std::move(base), std::move(w));
  for (const auto& [e, p] : ps) wg.set_p(e.u, e.v, p);
  wg.validate();
  return wg;
}

json weights_to_json(const WeightedGraph& wg) {
  json p = json::object();
  for (const auto& e : wg.base().edges()) p[pair_key(e.u, e.v)] = wg.p(e.u, e.v);
  return {{"schema", "nosal.weights/1"}, {"w", wg.w()}, {"p", p}};
}

SearchConfig search_config(const json& j) {
  SearchConfig c;
  c.objective = objective_from_string(j.value("objective", std::string("min_bk_ratio")));
  c.m = j.value("m", std::int64_t{0});
  c.n_max = j.value("n_max", std::size_t{0});
  c.r = j.value("r", 2);
  c.k = j.value("k", 1);
  c.steps = j.value("steps", c.steps);
  c.temperature = j.value("temperature", c.temperature);
  c.decay = j.value("decay", c.decay);
  c.seed = j.value("seed", c.seed);
  c.restarts = j.value("restarts", c.restarts);
  c.threads = j.value("threads", c.threads);
  c.refresh_every = j.value("refresh_every", c.refresh_every);
  c.certify_every = j.value("certify_every", c.certify_every);
  return c;
}

}  // namespace

extern "C" {

const char* nosal_version(void) { return "0.1.0"; }

const char* nosal_status_name(nosal_status status) {
  if (status == NOSAL_OK) return "ok";
  if (status == NOSAL_ERR_INTERNAL) return "internal";
  if (status >= NOSAL_ERR_PARSE && status <= NOSAL_ERR_CODEC) return to_string(static_cast<ErrorKind>(status));
  return "unknown";
}

const char* nosal_last_error(void) { return last_error.c_str(); }

void nosal_string_free(char* s) { std::free(s); }

nosal_status nosal_graph_new(size_t n, nosal_graph** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(Graph(n));
  });
}

void nosal_graph_free(nosal_graph* g) { delete g; }

nosal_status nosal_graph_clone(const nosal_graph* g, nosal_graph** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = wrap(g->g);
  });
}

size_t nosal_graph_n(const nosal_graph* g) { return g ? g->g.n() : 0; }
size_t nosal_graph_m(const nosal_graph* g) { return g ? g->g.m() : 0; }

nosal_status nosal_graph_add_edge(nosal_graph* g, uint32_t u, uint32_t v, int* added) {
  return guarded([&] {
    need(g, "graph");
    const bool r = g->g.add_edge(u, v);
    if (added) *added = r;
  });
}

nosal_status nosal_graph_remove_edge(nosal_graph* g, uint32_t u, uint32_t v, int* removed) {
  return guarded([&] {
    need(g, "graph");
    const bool r = g->g.remove_edge(u, v);
    if (removed) *removed = r;
  });
}

nosal_status nosal_graph_has_edge(const nosal_graph* g, uint32_t u, uint32_t v, int* present) {
  return guarded([&] {
    need(g, "graph");
    need(present, "present");
    g->g.check_vertex(u);
    g->g.check_vertex(v);
    *present = g->g.has_edge(u, v);
  });
}

nosal_status nosal_graph_edges(const nosal_graph* g, uint32_t* pairs, size_t cap, size_t* count) {
  return guarded([&] {
    need(g, "graph");
    if (cap) need(pairs, "pairs");
    const auto es = g->g.edges();
    for (std::size_t i = 0; i < es.size() && i < cap; ++i) {
      pairs[2 * i] = es[i].u;
      pairs[2 * i + 1] = es[i].v;
    }
    if (count) *count = es.size();
  });
}

nosal_status nosal_graph_from_graph6(const char* text, nosal_graph** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = wrap(graph6_decode(text));
  });
}

nosal_status nosal_graph_from_edge_list(const char* text, int compact, nosal_graph** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = wrap(parse_edge_list(text, {.compact = compact != 0}).graph);
  });
}

nosal_status nosal_graph_parse(const char* text, nosal_graph** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    std::string_view s(text);
    const auto b = s.find_first_not_of(" \t\r\n");
    const auto e = s.find_last_not_of(" \t\r\n");
    if (b == std::string_view::npos) fail(ErrorKind::Parse, "empty graph input");
    const auto body = s.substr(b, e - b + 1);
    const bool one_token = body.find_first_of(" \t\r\n") == std::string_view::npos;
    const bool digits = body.find_first_not_of("0123456789") == std::string_view::npos;
    if (body.rfind(">>graph6<<", 0) == 0 || (one_token && !digits))
      *out = wrap(graph6_decode(body));
    else
      *out = wrap(parse_edge_list(body).graph);
  });
}

nosal_status nosal_graph_to_graph6(const nosal_graph* g, char** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = dup(graph6_encode(g->g));
  });
}

nosal_status nosal_graph_to_edge_list(const nosal_graph* g, char** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = dup(write_edge_list(g->g));
  });
}

nosal_status nosal_generate(const char* name, const char* params_json, nosal_graph** out, char** info_json) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    std::map<std::string, std::int64_t> params;
    if (params_json && *params_json) {
      const auto j = json::parse(params_json);
      if (!j.is_object()) fail(ErrorKind::Parse, "params must be a JSON object");
      for (const auto& [k, v] : j.items()) {
        if (!v.is_number_integer()) fail(ErrorKind::Argument, "parameter " + k + " must be an integer");
        params[k] = v.get<std::int64_t>();
      }
    }
    auto c = generate(name, params);
    if (info_json) {
      json preds = json::array();
      bool all = true;
      for (const auto& pc : self_check(c)) {
        all = all && pc.pass;
        preds.push_back({{"stat", pc.prediction.stat},
                         {"relation", to_string(pc.prediction.rel)},
                         {"predicted", pc.prediction.value},
                         {"observed", pc.observed},
                         {"pass", pc.pass}});
      }
      json j = {{"schema", "nosal.construction/1"}, {"name", c.name},     {"params", c.params},
                {"n", c.graph.n()},                 {"m", c.graph.m()},   {"predictions", preds},
                {"all_pass", all}};
      emit(info_json, j);
    }
    *out = wrap(std::move(c.graph));
  });
}

nosal_status nosal_construction_names(char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup(json(construction_names()).dump());
  });
}

nosal_status nosal_spectral_radius(const nosal_graph* g, double tol, double* lambda) {
  return guarded([&] {
    need(g, "graph");
    need(lambda, "lambda");
    SpectralOptions o;
    if (tol > 0) o.tol = tol;
    *lambda = spectral_radius(g->g, o).lambda;
  });
}

nosal_status nosal_is_nosal(const nosal_graph* g, int* kind) {
  return guarded([&] {
    need(g, "graph");
    need(kind, "kind");
    *kind = static_cast<int>(is_nosal(g->g).kind);
  });
}

nosal_status nosal_book_size(const nosal_graph* g, int64_t* size) {
  return guarded([&] {
    need(g, "graph");
    need(size, "size");
    *size = book_size(g->g).size;
  });
}

nosal_status nosal_c4_count(const nosal_graph* g, int method, int64_t* count) {
  return guarded([&] {
    need(g, "graph");
    need(count, "count");
    if (method < 0 || method > 3) fail(ErrorKind::Argument, "unknown 4-cycle method");
    *count = c4_count(g->g, static_cast<C4Method>(method)).value;
  });
}

nosal_status nosal_analyze(const nosal_graph* g, int max_r, int max_clique, double tol, char** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    const Graph& G = g->g;
    SpectralOptions so;
    if (tol > 0) so.tol = tol;
    json spec = nullptr;
    if (G.m() > 0) {
      const auto cert = spectral_radius(G, so);
      const auto v = is_nosal(G, cert);
      spec = {{"lambda", cert.lambda},
              {"residual", cert.residual},
              {"iterations", cert.iterations},
              {"component_size", cert.component.size()},
              {"rational_lower_bound", rational_json(cert.rational_lower_bound)},
              {"nosal", to_string(v.kind)},
              {"margin", v.margin},
              {"witness", v.witness ? rational_json(*v.witness) : json(nullptr)}};
    }
    const auto r = count_all(G, {.max_r = max_r, .max_clique = max_clique});
    json gb = json::object(), js = json::object(), cc = json::object();
    for (const auto& [k, v] : r.generalized_book) gb[std::to_string(k)] = {{"k", v.k}, {"clique", v.clique}};
    for (const auto& [k, v] : r.joint_size)
      js[std::to_string(k)] = {{"count", v.count}, {"witness", edge_json(v.witness)}};
    for (const auto& [k, v] : r.clique_counts) cc[std::to_string(k)] = v;
    json chord = json::array();
    for (const auto& e : r.chordal_lb.witness) chord.push_back({e.u, e.v});
    json j = {{"schema", "nosal.analyze/1"},
              {"n", r.n},
              {"m", r.m},
              {"spectral", spec},
              {"triangles", r.triangles},
              {"c4", r.c4},
              {"kites", r.kites},
              {"book_size", {{"size", r.book.size}, {"witness", edge_json(r.book.witness)}}},
              {"generalized_book", gb},
              {"joint_size", js},
              {"clique_counts", cc},
              {"triangular_edges", r.triangular_edges},
              {"k4_saturating", r.k4_saturating},
              {"chordal_lb", {{"edges", r.chordal_lb.edges}, {"witness", chord}}},
              {"degree_power", r.degree_power},
              {"max_degree", r.max_degree}};
    emit(out, j);
  });
}

nosal_status nosal_dichotomy(const nosal_graph* g, double eps, char** out, nosal_graph** sub) {
  return guarded([&] {
    need(g, "graph");
    auto d = structural_dichotomy(g->g, eps);
    if (out) {
      json trace = json::array();
      for (const auto& l : d.trace)
        trace.push_back({{"t", l.t},
                         {"upper", l.upper},
                         {"lower", l.lower},
                         {"a_size", l.a_size},
                         {"b_size", l.b_size},
                         {"c_size", l.c_size},
                         {"cross_weight", l.cross_weight},
                         {"eligible", l.eligible},
                         {"lambda_bipartite", l.lambda_bipartite},
                         {"lambda_middle", l.lambda_middle},
                         {"middle_max_degree", l.middle_max_degree},
                         {"size_facts", l.size_facts}});
      json j = {{"schema", "nosal.dichotomy/1"},
                {"branch", to_string(d.branch)},
                {"eps", d.eps},
                {"lambda", d.lambda},
                {"lambda_sub", d.lambda_sub},
                {"target", d.target},
                {"retention", g->g.m() ? d.lambda_sub / std::sqrt(static_cast<double>(g->g.m())) : 0.0},
                {"sub_n", d.subgraph.n()},
                {"sub_m", d.subgraph.m()},
                {"sub_max_degree", d.subgraph.max_degree()},
                {"part_a_size", d.part_a.size()},
                {"part_b_size", d.part_b.size()},
                {"t_used", d.t_used},
                {"t_limit", d.t_limit},
                {"trace", trace}};
      emit(out, j);
    }
    give(sub, std::move(d.subgraph));
  });
}

nosal_status nosal_proof_weights(const nosal_graph* g, int r, char** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    const auto cert = spectral_radius(g->g);
    if (is_nosal(g->g, cert).kind != NosalKind::CertifiedYes)
      fail(ErrorKind::Precondition, "proof weights need a certified Nosal graph");
    const auto wg = r == 2 ? proof_weights_book(g->g, cert) : proof_weights_joint(g->g, cert, r);
    auto j = weights_to_json(wg);
    j["r"] = r;
    j["density"] = weighted_edge_density(wg);
    emit(out, j);
  });
}

nosal_status nosal_blowup(const char* weights_json, size_t N, uint64_t seed, char** out, nosal_graph** blown) {
  return guarded([&] {
    need(weights_json, "weights");
    if (N == 0) fail(ErrorKind::Argument, "N must be positive");
    const auto wg = weights_from_json(json::parse(weights_json));
    auto b = random_blowup(wg, N, seed);
    if (out) {
      const double density = weighted_edge_density(wg);
      const double nn = static_cast<double>(N);
      const double target = nn * nn * density;
      const double dev = static_cast<double>(b.m()) - target;
      json j = {{"schema", "nosal.blowup/1"},
                {"N", N},
                {"seed", seed},
                {"n", b.n()},
                {"m", b.m()},
                {"density", density},
                {"target_edges", target},
                {"expected_edges", blowup_expected_edges(wg, N)},
                {"deviation", dev},
                {"window", 3.0 * std::pow(nn, 1.5)},
                {"within_window", std::abs(dev) <= 3.0 * std::pow(nn, 1.5)}};
      emit(out, j);
    }
    give(blown, std::move(b));
  });
}

nosal_status nosal_search(const char* config_json, char** record_json, nosal_graph** best) {
  return guarded([&] {
    need(config_json, "config");
    const auto cfg = search_config(json::parse(config_json));
    auto rec = extremal_search(cfg);
    if (record_json) {
      json j = {{"schema", "nosal.search/1"},
                {"objective", to_string(cfg.objective)},
                {"m", cfg.m},
                {"steps", cfg.steps},
                {"seed", cfg.seed},
                {"restarts", cfg.restarts},
                {"minimize", rec.minimize},
                {"best_value", rec.best_value},
                {"initial_value", rec.initial_value},
                {"certified", rec.certified},
                {"accepted", rec.accepted},
                {"restart", rec.restart},
                {"n", rec.best_graph.n()},
                {"edges", rec.best_graph.m()},
                {"trace", rec.trace},
                {"graph6", graph6_encode(rec.best_graph)}};
      emit(record_json, j);
    }
    give(best, std::move(rec.best_graph));
  });
}

nosal_status nosal_verify_graph(const nosal_graph* g, const char* descriptor, double tol, const char* format,
                                char** out, int* failed) {
  return guarded([&] {
    need(g, "graph");
    format_of(format);
    GraphCase c;
    c.graph = g->g;
    c.descriptor = descriptor && *descriptor ? descriptor : "input";
    const auto rows = verify_graph(c, tol > 0 ? tol : 1e-9);
    emit(out, rows_in(rows, format));
    if (failed) *failed = failed_rows(rows);
  });
}

nosal_status nosal_verify_suite(const char* options_json, const char* format, char** out, int* failed) {
  return guarded([&] {
    need(options_json, "options");
    format_of(format);
    const auto j = json::parse(options_json);
    SuiteOptions o;
    o.families = j.value("families", family_names());
    o.m_values = j.at("m_values").get<std::vector<std::int64_t>>();
    o.seed = j.value("seed", o.seed);
    o.threads = j.value("threads", o.threads);
    o.tol = j.value("tol", o.tol);
    o.search_steps = j.value("search_steps", o.search_steps);
    const auto rows = verify_suite(o);
    emit(out, rows_in(rows, format));
    if (failed) *failed = failed_rows(rows);
  });
}

nosal_status nosal_family_names(char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup(json(family_names()).dump());
  });
}

nosal_status nosal_table1(int64_t m, uint64_t seed, size_t search_steps, const char* format, char** out) {
  return guarded([&] {
    need(out, "out");
    const auto f = format_of(format);
    const auto rows = table1_report(m, seed, search_steps);
    if (f == "json")
      *out = dup(table1_json(rows, m));
    else if (f == "csv")
      *out = dup(table1_csv(rows));
    else
      *out = dup(table1_text(rows));
  });
}

}  // extern "C"
