#include "nosal/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>

#include "nosal/error.hpp"

namespace nosal {

namespace {

struct DataLine {
  std::size_t line_no;
  std::uint64_t a;
  std::uint64_t b;
};

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\v\f";
  auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::optional<std::uint64_t> next_uint(std::string_view& s) {
  s = trim(s);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr == s.data()) return std::nullopt;
  std::string_view rest = s.substr(static_cast<std::size_t>(ptr - s.data()));
  if (!rest.empty() && rest.front() != ' ' && rest.front() != '\t') return std::nullopt;
  s = rest;
  return value;
}

}  // namespace

ParsedEdgeList parse_edge_list(std::string_view text, EdgeListOptions opts) {
  std::vector<DataLine> lines;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto a = next_uint(line);
    auto b = a ? next_uint(line) : std::nullopt;
    if (!a || !b || !trim(line).empty())
      fail(ErrorKind::Parse, "line " + std::to_string(line_no) +
                                 ": expected two nonnegative integers");
    lines.push_back({line_no, *a, *b});
  }

  std::optional<std::uint64_t> header_n;
  if (!lines.empty()) {
    const auto& h = lines.front();
    bool fits = h.a > 0 && h.b == lines.size() - 1;
    for (std::size_t i = 1; fits && i < lines.size(); ++i)
      fits = lines[i].a < h.a && lines[i].b < h.a;
    if (fits) {
      header_n = h.a;
      lines.erase(lines.begin());
    }
  }

  std::uint64_t max_id = 0;
  for (const auto& l : lines) {
    if (l.a == l.b)
      fail(ErrorKind::Parse,
           "line " + std::to_string(l.line_no) + ": self-loop at vertex " + std::to_string(l.a));
    max_id = std::max({max_id, l.a, l.b});
  }
  if (max_id >= (std::uint64_t{1} << 31))
    fail(ErrorKind::Capacity, "vertex id too large");

  std::size_t n = header_n ? *header_n : (lines.empty() ? 0 : max_id + 1);
  std::vector<Vertex> index_map;
  std::vector<Vertex> remap;
  if (opts.compact) {
    std::vector<char> used(n, 0);
    for (const auto& l : lines) used[l.a] = used[l.b] = 1;
    remap.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v)
      if (used[v]) {
        remap[v] = static_cast<Vertex>(index_map.size());
        index_map.push_back(static_cast<Vertex>(v));
      }
    n = index_map.size();
  } else {
    index_map.resize(n);
    for (std::size_t v = 0; v < n; ++v) index_map[v] = static_cast<Vertex>(v);
  }

  Graph g(n);
  for (const auto& l : lines) {
    auto u = static_cast<Vertex>(l.a);
    auto v = static_cast<Vertex>(l.b);
    if (opts.compact) {
      u = remap[u];
      v = remap[v];
    }
    g.add_edge(u, v);
  }
  return {std::move(g), std::move(index_map)};
}

std::string write_edge_list(const Graph& g) {
  std::string out = std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
  for (const Edge& e : g.edges())
    out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

std::string graph6_encode(const Graph& g) {
  const std::uint64_t n = g.n();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
  int chunk = 0;
  int filled = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      chunk = (chunk << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + chunk));
        chunk = filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (chunk << (6 - filled))));
  return out;
}

Graph graph6_decode(std::string_view text) {
  text = trim(text);
  constexpr std::string_view kHeader = ">>graph6<<";
  if (text.starts_with(kHeader)) text.remove_prefix(kHeader.size());
  for (char c : text)
    if (c < 63 || c > 126)
      fail(ErrorKind::Codec, "graph6: invalid character code " +
                                 std::to_string(static_cast<unsigned char>(c)));
  if (text.empty()) fail(ErrorKind::Codec, "graph6: empty input");

  std::size_t pos = 0;
  auto take = [&](int count) {
    std::uint64_t v = 0;
    for (int k = 0; k < count; ++k) {
      if (pos >= text.size()) fail(ErrorKind::Codec, "graph6: truncated size field");
      v = (v << 6) | static_cast<std::uint64_t>(text[pos++] - 63);
    }
    return v;
  };
  std::uint64_t n = 0;
  if (text[0] != 126) {
    n = take(1);
  } else if (text.size() > 1 && text[1] == 126) {
    pos = 2;
    n = take(6);
  } else {
    pos = 1;
    n = take(3);
  }
  if (n >= (std::uint64_t{1} << 31)) fail(ErrorKind::Capacity, "graph6: too many vertices");

  const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::uint64_t bytes = (bits + 5) / 6;
  if (text.size() - pos != bytes)
    fail(ErrorKind::Codec, "graph6: payload has " + std::to_string(text.size() - pos) +
                               " bytes, expected " + std::to_string(bytes));
  Graph g(n);
  std::uint64_t k = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i, ++k) {
      int byte = text[pos + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  if (k % 6 != 0) {
    int byte = text[pos + k / 6] - 63;
    if (byte & ((1 << (6 - k % 6)) - 1)) fail(ErrorKind::Codec, "graph6: nonzero padding bits");
  }
  return g;
}

}  // namespace nosal
