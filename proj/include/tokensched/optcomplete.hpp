#pragma once

#include <cstdint>
#include <vector>

#include "tokensched/params.hpp"
#include "tokensched/schedule.hpp"

namespace tokensched::complete {

// Rooted tree with nodes 0..size-1. Children keep recurrence order: the
// subtree joined at each step comes last.
struct AggTree {
  int root = 0;
  std::vector<int> parent;  // -1 at the root
  std::vector<std::vector<int>> children;
  int R = 0;  // round horizon; 0 for arbitrary trees
  NetworkParams params;

  int size() const { return static_cast<int>(parent.size()); }
  std::vector<int> depths() const;
};

// Sizes |T(0)| .. |T(r_max)|, saturating at UINT64_MAX.
std::vector<std::uint64_t> tree_sizes(int r_max, const NetworkParams& p);
std::uint64_t tree_size(int R, const NetworkParams& p);

// T(R): a leaf when R < tc + tm, otherwise T(R - tc) with T(R - tc - tm)
// joined under its root. Throws InputError if the tree exceeds max_nodes.
AggTree build_tree(int R, const NetworkParams& p, int max_nodes = 1 << 22);

// Smallest R with |T(R)| >= n.
int r_star(long long n, const NetworkParams& p);

// Removes deepest leaves (highest id among equals) until `n` nodes remain;
// survivors are renumbered in their original order.
AggTree prune_tree(const AggTree& tree, int n);

// Tree node -> graph node.
using TreeEmbedding = std::vector<int>;

// Greedy aggregation: a non-root node sends to its parent once it is idle,
// holds exactly one token and has heard from every child; any idle node
// holding two or more tokens merges. Length is the last occupied round,
// padded to tree.R when the tree carries a larger horizon.
Schedule greedy_schedule(const AggTree& tree, const TreeEmbedding& embedding,
                         const NetworkParams& p);

// Optimal schedule on K_n: greedy aggregation on T(R*(n)) pruned to n
// nodes, embedded with tree node i on graph node i.
Schedule opt_complete(int n, const NetworkParams& p);

struct Baselines {
  long long naive_binary = 0;
  long long pipelined_binary = 0;
  long long optimal = 0;
  long long compute_lb = 0;
};

Baselines baseline_lengths(long long n, const NetworkParams& p);

}  // namespace tokensched::complete
