#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nosal/nosal.h"

namespace {

using nlohmann::json;

struct Failure {
  nosal_status status;
  std::string what;
};

void check(nosal_status s) {
  if (s != NOSAL_OK) throw Failure{s, nosal_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  nosal_string_free(s);
  return out;
}

struct GraphHandle {
  nosal_graph* g = nullptr;
  GraphHandle() = default;
  GraphHandle(const GraphHandle&) = delete;
  GraphHandle& operator=(const GraphHandle&) = delete;
  ~GraphHandle() { nosal_graph_free(g); }
};

struct Globals {
  std::string format = "json";
  std::uint64_t seed = 1;
  int threads = 1;
  double tol = 0.0;
};

std::string slurp(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw Failure{NOSAL_ERR_ARGUMENT, "cannot open " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Failure{NOSAL_ERR_ARGUMENT, "cannot write " + path};
  out << text;
}

void load_graph(const std::string& path, GraphHandle& h) {
  check(nosal_graph_parse(slurp(path).c_str(), &h.g));
}

std::string graph_text(const nosal_graph* g, const std::string& kind) {
  char* s = nullptr;
  if (kind == "edgelist") {
    check(nosal_graph_to_edge_list(g, &s));
    return take(s);
  }
  check(nosal_graph_to_graph6(g, &s));
  return take(s) + "\n";
}

// Flattens nested JSON into (path, value) pairs for the text and CSV views.
void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_array()) {
    std::string s;
    for (const auto& e : j) s += (s.empty() ? "" : " ") + (e.is_string() ? e.get<std::string>() : e.dump());
    out.emplace_back(prefix, s);
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string render(const std::string& json_text, const std::string& format) {
  if (format == "json") return json_text;
  std::vector<std::pair<std::string, std::string>> kv;
  flatten(json::parse(json_text), "", kv);
  std::string out;
  if (format == "csv") {
    out = "key,value\n";
    for (const auto& [k, v] : kv) out += k + "," + (v.find(',') != std::string::npos ? "\"" + v + "\"" : v) + "\n";
    return out;
  }
  std::size_t width = 0;
  for (const auto& p : kv) width = std::max(width, p.first.size());
  for (const auto& [k, v] : kv) out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
  return out;
}

std::map<std::string, std::int64_t> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, std::int64_t> out;
  for (const auto& it : items) {
    const auto eq = it.find('=');
    if (eq == std::string::npos) throw Failure{NOSAL_ERR_ARGUMENT, "expected key=value, got " + it};
    try {
      std::size_t used = 0;
      const auto v = std::stoll(it.substr(eq + 1), &used);
      if (used != it.size() - eq - 1) throw std::invalid_argument(it);
      out[it.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      throw Failure{NOSAL_ERR_ARGUMENT, "parameter " + it + " is not an integer"};
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral supersaturation toolkit for Nosal graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(nosal_version()));
  Globals G;
  app.add_option("--format", G.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--seed", G.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", G.threads, "Worker threads")->check(CLI::Range(1, 1024))->capture_default_str();
  app.add_option("--tol", G.tol, "Power iteration tolerance (0 keeps the default)")->check(CLI::NonNegativeNumber);

  int exit_code = 0;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a construction");
  std::string gen_name;
  std::vector<std::string> gen_params;
  std::string gen_graph_format = "graph6";
  std::string gen_out;
  bool gen_graph_only = false;
  gen->add_option("name", gen_name, "Construction name")->required();
  gen->add_option("-p,--params", gen_params, "Integer parameters as key=value");
  gen->add_option("--graph-format", gen_graph_format)->check(CLI::IsMember({"graph6", "edgelist"}));
  gen->add_option("-o,--out", gen_out, "Write the graph here instead of stdout");
  gen->add_flag("--graph-only", gen_graph_only, "Skip the prediction block");
  gen->callback([&] {
    GraphHandle h;
    char* info = nullptr;
    const json params = parse_params(gen_params);
    check(nosal_generate(gen_name.c_str(), params.dump().c_str(), &h.g, &info));
    const auto block = take(info);
    const auto graph = graph_text(h.g, gen_graph_format);
    if (gen_out.empty())
      std::cout << graph;
    else
      write_file(gen_out, graph);
    if (!gen_graph_only) std::cout << render(block, G.format);
    if (!json::parse(block).value("all_pass", true)) exit_code = 1;
  });

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Spectral certificate and subgraph counts");
  std::string an_in;
  int an_r = 3, an_clique = 4;
  analyze->add_option("input", an_in, "Edge list or graph6 file (stdin when omitted)");
  analyze->add_option("--max-r", an_r, "Largest r for generalized books and joints")->capture_default_str();
  analyze->add_option("--max-clique", an_clique, "Largest clique size counted")->capture_default_str();
  analyze->callback([&] {
    GraphHandle h;
    load_graph(an_in, h);
    char* out = nullptr;
    check(nosal_analyze(h.g, an_r, an_clique, G.tol, &out));
    std::cout << render(take(out), G.format);
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Check the claims on one graph or a family suite");
  std::string v_in, v_name = "input";
  std::vector<std::string> v_families;
  std::vector<std::int64_t> v_m;
  std::size_t v_steps = 2000;
  verify->add_option("input", v_in, "Graph file (stdin when omitted and no --m)");
  verify->add_option("--name", v_name, "Descriptor for a single input graph");
  verify->add_option("--family", v_families, "Families for the suite (all when omitted)");
  verify->add_option("--m", v_m, "Edge budgets for the suite");
  verify->add_option("--search-steps", v_steps, "Steps for search families")->capture_default_str();
  verify->callback([&] {
    char* out = nullptr;
    int failed = 0;
    if (!v_m.empty()) {
      json opts = {{"m_values", v_m},
                   {"seed", G.seed},
                   {"threads", G.threads},
                   {"search_steps", v_steps}};
      if (G.tol > 0) opts["tol"] = G.tol;
      if (!v_families.empty()) opts["families"] = v_families;
      check(nosal_verify_suite(opts.dump().c_str(), G.format.c_str(), &out, &failed));
    } else {
      if (!v_families.empty()) throw Failure{NOSAL_ERR_ARGUMENT, "--family needs --m"};
      GraphHandle h;
      load_graph(v_in, h);
      check(nosal_verify_graph(h.g, v_name.c_str(), G.tol, G.format.c_str(), &out, &failed));
    }
    std::cout << take(out);
    if (failed > 0) exit_code = 1;
  });

  // dichotomy
  auto* dich = app.add_subcommand("dichotomy", "Bipartite or small-degree subgraph");
  std::string d_in, d_sub;
  double d_eps = 0.1;
  dich->add_option("input", d_in, "Graph file (stdin when omitted)");
  dich->add_option("--eps", d_eps, "Epsilon in (0, 0.1]")->capture_default_str();
  dich->add_option("--sub", d_sub, "Write the extracted subgraph (graph6) here");
  dich->callback([&] {
    GraphHandle h, sub;
    load_graph(d_in, h);
    char* out = nullptr;
    check(nosal_dichotomy(h.g, d_eps, &out, &sub.g));
    std::cout << render(take(out), G.format);
    if (!d_sub.empty()) write_file(d_sub, graph_text(sub.g, "graph6"));
  });

  // search
  auto* search = app.add_subcommand("search", "Simulated annealing over certified graphs");
  std::string s_obj = "min_bk_ratio", s_out;
  std::int64_t s_m = 0;
  std::size_t s_steps = 10000, s_nmax = 0, s_certify = 5000;
  int s_restarts = 1, s_r = 2, s_k = 1;
  double s_temp = 0.02;
  search->add_option("--objective", s_obj)
      ->check(CLI::IsMember({"min_bk_ratio", "min_c4_ratio", "min_triangular_ratio", "max_lambda_Brk_free"}))
      ->capture_default_str();
  search->add_option("--m", s_m, "Edge budget")->required();
  search->add_option("--steps", s_steps)->capture_default_str();
  search->add_option("--restarts", s_restarts)->capture_default_str();
  search->add_option("--n-max", s_nmax, "Vertex cap (0 keeps the start graph's)");
  search->add_option("--r", s_r, "Clique size of the forbidden book")->capture_default_str();
  search->add_option("--k", s_k, "Page count of the forbidden book")->capture_default_str();
  search->add_option("--temperature", s_temp)->capture_default_str();
  search->add_option("--certify-every", s_certify)->capture_default_str();
  search->add_option("-o,--out", s_out, "Write the best graph (graph6) here");
  search->callback([&] {
    json cfg = {{"objective", s_obj}, {"m", s_m},           {"steps", s_steps},        {"seed", G.seed},
                {"restarts", s_restarts}, {"threads", G.threads}, {"n_max", s_nmax}, {"r", s_r},
                {"k", s_k},             {"temperature", s_temp}, {"certify_every", s_certify}};
    GraphHandle best;
    char* rec = nullptr;
    check(nosal_search(cfg.dump().c_str(), &rec, &best.g));
    std::cout << render(take(rec), G.format);
    if (!s_out.empty()) write_file(s_out, graph_text(best.g, "graph6"));
  });

  // blowup
  auto* blow = app.add_subcommand("blowup", "Random blowup of a weighted graph");
  std::string b_in, b_stats, b_weights_out;
  std::size_t b_N = 0;
  int b_r = 2;
  blow->add_option("input", b_in,
                   "Weighted-graph JSON, or a certified graph whose proof weights are used (stdin when omitted)");
  blow->add_option("--N", b_N, "Blowup scale")->required();
  blow->add_option("--r", b_r, "Clique order of the proof weights for graph input")->capture_default_str();
  blow->add_option("--stats", b_stats, "Write edge-count statistics (JSON) here");
  blow->add_option("--weights-out", b_weights_out, "Write the weights used (JSON) here");
  blow->callback([&] {
    auto text = slurp(b_in);
    const auto parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
      GraphHandle h;
      check(nosal_graph_parse(text.c_str(), &h.g));
      char* w = nullptr;
      check(nosal_proof_weights(h.g, b_r, &w));
      text = take(w);
    }
    if (!b_weights_out.empty()) write_file(b_weights_out, text);
    GraphHandle out;
    char* stats = nullptr;
    check(nosal_blowup(text.c_str(), b_N, G.seed, &stats, &out.g));
    const auto st = take(stats);
    std::cout << graph_text(out.g, "graph6");
    if (!b_stats.empty()) write_file(b_stats, render(st, G.format));
  });

  // table1
  auto* table = app.add_subcommand("table1", "Smallest observed values of the supersaturation quantities");
  std::int64_t t_m = 10000;
  std::size_t t_steps = 0;
  table->add_option("--m", t_m, "Edge budget (at least 100)")->capture_default_str();
  table->add_option("--search-steps", t_steps, "Also use search incumbents with this many steps");
  table->callback([&] {
    char* out = nullptr;
    check(nosal_table1(t_m, G.seed, t_steps, G.format.c_str(), &out));
    std::cout << take(out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Failure& f) {
    std::cerr << "nosal: " << nosal_status_name(f.status) << ": " << f.what << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "nosal: parse: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
