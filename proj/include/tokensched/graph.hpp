#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace tokensched {

// Undirected simple graph on nodes 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, const std::vector<std::pair<int, int>>& edges);

  int n() const { return static_cast<int>(adj_.size()); }
  std::size_t m() const { return m_; }

  // Throws InputError on self-loops, duplicates and out-of-range ids.
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;

  // Edges as (u, v) with u < v, in lexicographic order.
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const Graph& other) const { return adj_ == other.adj_; }

 private:
  std::vector<std::vector<int>> adj_;
  std::size_t m_ = 0;
};

// Hop distances from src; -1 marks unreachable nodes.
std::vector<int> bfs_distances(const Graph& g, int src);
std::vector<std::vector<int>> all_pairs_distances(const Graph& g);
bool is_connected(const Graph& g);

// Both throw UnsolvableError on disconnected input.
int diameter(const Graph& g);
int radius(const Graph& g);

// Shortest path src..dst (inclusive), ties broken toward smaller ids.
std::vector<int> shortest_path(const Graph& g, int src, int dst);

Graph complete_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);
// Node 0 is the center; n counts all nodes.
Graph star_graph(int n);
Graph grid_graph(int rows, int cols);

}  // namespace tokensched
