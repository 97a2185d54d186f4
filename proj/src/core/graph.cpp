#include "tokensched/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "tokensched/errors.hpp"

namespace tokensched {

Graph::Graph(int n) {
  if (n < 0) throw InputError("node count must be nonnegative");
  adj_.resize(n);
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n() || v >= n()) {
    throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                     ") has an endpoint outside [0, " + std::to_string(n()) +
                     ")");
  }
  if (u == v) throw InputError("self-loop at node " + std::to_string(u));
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) {
    throw InputError("duplicate edge (" + std::to_string(u) + ", " +
                     std::to_string(v) + ")");
  }
  au.insert(it, v);
  auto& av = adj_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++m_;
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n() || v >= n()) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& a : adj_) best = std::max(best, static_cast<int>(a.size()));
  return best;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int u = 0; u < n(); ++u) {
    for (int v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<int> bfs_distances(const Graph& g, int src) {
  std::vector<int> dist(g.n(), -1);
  std::deque<int> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
  std::vector<std::vector<int>> out;
  out.reserve(g.n());
  for (int v = 0; v < g.n(); ++v) out.push_back(bfs_distances(g, v));
  return out;
}

bool is_connected(const Graph& g) {
  if (g.n() <= 1) return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

namespace {

std::vector<int> eccentricities(const Graph& g) {
  if (!is_connected(g)) {
    throw UnsolvableError("graph is disconnected: Token Computation unsolvable");
  }
  std::vector<int> ecc(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) {
    auto dist = bfs_distances(g, v);
    ecc[v] = *std::max_element(dist.begin(), dist.end());
  }
  return ecc;
}

}  // namespace

int diameter(const Graph& g) {
  if (g.n() == 0) return 0;
  auto ecc = eccentricities(g);
  return *std::max_element(ecc.begin(), ecc.end());
}

int radius(const Graph& g) {
  if (g.n() == 0) return 0;
  auto ecc = eccentricities(g);
  return *std::min_element(ecc.begin(), ecc.end());
}

std::vector<int> shortest_path(const Graph& g, int src, int dst) {
  // BFS from dst, then walk downhill from src picking the smallest id.
  auto dist = bfs_distances(g, dst);
  if (dist[src] < 0) return {};
  std::vector<int> path{src};
  int cur = src;
  while (cur != dst) {
    for (int v : g.neighbors(cur)) {
      if (dist[v] == dist[cur] - 1) {
        cur = v;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(0, n - 1);
  return g;
}

Graph star_graph(int n) {
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(0, v);
  return g;
}

Graph grid_graph(int rows, int cols) {
  Graph g(rows * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (c + 1 < cols) g.add_edge(v, v + 1);
      if (r + 1 < rows) g.add_edge(v, v + cols);
    }
  }
  return g;
}

}  // namespace tokensched
