#include "tokensched/paths.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace tokensched {

std::vector<int> DirectedPathSet::sources() const {
  std::vector<int> out;
  for (const auto& p : paths) out.push_back(p.front());
  return out;
}

std::vector<int> DirectedPathSet::sinks() const {
  std::vector<int> out;
  for (const auto& p : paths) out.push_back(p.back());
  return out;
}

std::vector<int> vertex_occurrences(const std::vector<VertexPath>& paths, int n) {
  std::vector<int> occ(n, 0);
  for (const auto& p : paths) {
    for (int v : p) ++occ[v];
  }
  return occ;
}

int congestion(const std::vector<VertexPath>& paths, int n) {
  auto occ = vertex_occurrences(paths, n);
  return occ.empty() ? 0 : *std::max_element(occ.begin(), occ.end());
}

int dilation(const std::vector<VertexPath>& paths) {
  int best = 0;
  for (const auto& p : paths) best = std::max(best, static_cast<int>(p.size()) - 1);
  return best;
}

VertexPath excise_loops(const VertexPath& path) {
  VertexPath out;
  std::unordered_map<int, std::size_t> position;
  for (int v : path) {
    auto it = position.find(v);
    if (it != position.end()) {
      for (std::size_t i = it->second + 1; i < out.size(); ++i) position.erase(out[i]);
      out.resize(it->second + 1);
      continue;
    }
    position[v] = out.size();
    out.push_back(v);
  }
  return out;
}

std::string path_set_problem(const Graph& g, const DirectedPathSet& dp,
                             const std::vector<int>& W, bool disjoint_roles) {
  std::vector<char> in_w(g.n(), 0);
  for (int w : W) in_w[w] = 1;
  std::vector<int> as_source(g.n(), 0);
  std::vector<int> as_sink(g.n(), 0);
  for (std::size_t i = 0; i < dp.paths.size(); ++i) {
    const auto& p = dp.paths[i];
    const std::string tag = "path " + std::to_string(i) + ": ";
    if (p.size() < 2) return tag + "fewer than two vertices";
    for (int v : p) {
      if (v < 0 || v >= g.n()) return tag + "vertex out of range";
    }
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
      if (!g.has_edge(p[j], p[j + 1])) return tag + "consecutive vertices not adjacent";
    }
    VertexPath sorted = p;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      return tag + "repeats a vertex";
    }
    if (!in_w[p.front()] || !in_w[p.back()]) return tag + "endpoint outside W";
    ++as_source[p.front()];
    ++as_sink[p.back()];
  }
  for (int v = 0; v < g.n(); ++v) {
    if (as_source[v] > 1) return "vertex " + std::to_string(v) + " is a source twice";
    if (as_sink[v] > 1) return "vertex " + std::to_string(v) + " is a sink twice";
    if (disjoint_roles && as_source[v] + as_sink[v] > 1) {
      return "vertex " + std::to_string(v) + " is an endpoint of two paths";
    }
  }
  return {};
}

}  // namespace tokensched
