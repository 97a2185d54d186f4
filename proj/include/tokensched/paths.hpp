#pragma once

#include <string>
#include <vector>

#include "tokensched/graph.hpp"

namespace tokensched {

// Vertex sequence; front() is the source and back() the sink.
using VertexPath = std::vector<int>;

struct DirectedPathSet {
  std::vector<VertexPath> paths;

  std::vector<int> sources() const;
  std::vector<int> sinks() const;
  bool empty() const { return paths.empty(); }
  int size() const { return static_cast<int>(paths.size()); }
};

// Occurrences of each vertex summed over all paths.
std::vector<int> vertex_occurrences(const std::vector<VertexPath>& paths, int n);
// Max occurrences over vertices (0 for no paths).
int congestion(const std::vector<VertexPath>& paths, int n);
// Max hop count over paths.
int dilation(const std::vector<VertexPath>& paths);

// Cuts out every cycle: on revisiting a vertex, drops the segment since its
// first visit. Endpoints are preserved.
VertexPath excise_loops(const VertexPath& path);

// Returns an empty string when `dp` is a valid directed path set over W:
// consecutive vertices adjacent, endpoints in W and distinct, no repeated
// vertex, sources pairwise distinct, sinks pairwise distinct. With
// `disjoint_roles`, no vertex is an endpoint of two paths.
std::string path_set_problem(const Graph& g, const DirectedPathSet& dp,
                             const std::vector<int>& W, bool disjoint_roles);

}  // namespace tokensched
