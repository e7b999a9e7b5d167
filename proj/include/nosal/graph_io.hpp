#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nosal/graph.hpp"

namespace nosal {

struct EdgeListOptions {
  /// Drop vertex ids that appear in no edge and renumber densely.
  bool compact = false;
};

struct ParsedEdgeList {
  Graph graph;
  /// index_map[new] = id used in the input. Identity unless compacted.
  std::vector<Vertex> index_map;
};

/// Line-oriented "u v" pairs; '#' starts a comment. The first data line is
/// read as an "n m" header when exactly m edge lines follow it and every
/// vertex id below is < n (n >= 1). Duplicate edges are merged, self-loops rejected.
ParsedEdgeList parse_edge_list(std::string_view text, EdgeListOptions opts = {});

/// Writes the "n m" header followed by one sorted edge per line.
std::string write_edge_list(const Graph& g);

/// graph6 encoding (no ">>graph6<<" header, no trailing newline).
std::string graph6_encode(const Graph& g);

/// Accepts an optional ">>graph6<<" header and surrounding whitespace.
Graph graph6_decode(std::string_view text);

}  // namespace nosal
