#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "tokensched/errors.hpp"
#include "tokensched/optcomplete.hpp"

namespace tokensched::complete {

std::vector<int> AggTree::depths() const {
  std::vector<int> depth(size(), 0);
  // Parents always precede their children in construction order.
  for (int v = 0; v < size(); ++v) {
    if (parent[v] >= 0) depth[v] = depth[parent[v]] + 1;
  }
  return depth;
}

std::vector<std::uint64_t> tree_sizes(int r_max, const NetworkParams& p) {
  check_params(p);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> sizes(std::max(r_max, 0) + 1, 1);
  for (int r = p.tc + p.tm; r <= r_max; ++r) {
    const std::uint64_t a = sizes[r - p.tc];
    const std::uint64_t b = sizes[r - p.tc - p.tm];
    sizes[r] = a > kMax - b ? kMax : a + b;
  }
  return sizes;
}

std::uint64_t tree_size(int R, const NetworkParams& p) {
  return tree_sizes(R, p)[std::max(R, 0)];
}

namespace {

class Builder {
 public:
  Builder(AggTree& tree, const NetworkParams& p) : tree_(tree), p_(p) {}

  int emit(int R) {
    const int root = new_node();
    grow(root, R);
    return root;
  }

 private:
  int new_node() {
    tree_.parent.push_back(-1);
    tree_.children.emplace_back();
    return tree_.size() - 1;
  }

  // Turns the leaf `root` into T(R) by unrolling the R - tc spine.
  void grow(int root, int R) {
    if (R < p_.tc + p_.tm) return;
    grow(root, R - p_.tc);
    const int child = emit(R - p_.tc - p_.tm);
    tree_.parent[child] = root;
    tree_.children[root].push_back(child);
  }

  AggTree& tree_;
  NetworkParams p_;
};

}  // namespace

AggTree build_tree(int R, const NetworkParams& p, int max_nodes) {
  if (R < 0) throw InputError("round budget must be nonnegative");
  const std::uint64_t size = tree_size(R, p);
  if (size > static_cast<std::uint64_t>(max_nodes)) {
    throw InputError("T(" + std::to_string(R) + ") has " + std::to_string(size) +
                     " nodes, above the limit of " + std::to_string(max_nodes));
  }
  AggTree tree;
  tree.R = R;
  tree.params = p;
  tree.parent.reserve(size);
  tree.children.reserve(size);
  Builder(tree, p).emit(R);
  tree.root = 0;
  return tree;
}

int r_star(long long n, const NetworkParams& p) {
  check_params(p);
  if (n <= 1) return 0;
  std::vector<std::uint64_t> sizes{1};
  for (int r = 1;; ++r) {
    sizes.push_back(r < p.tc + p.tm ? 1 : sizes[r - p.tc] + sizes[r - p.tc - p.tm]);
    if (sizes[r] >= static_cast<std::uint64_t>(n)) return r;
  }
}

AggTree prune_tree(const AggTree& tree, int n) {
  if (n < 1 || n > tree.size()) {
    throw InputError("cannot prune a tree of " + std::to_string(tree.size()) +
                     " nodes to " + std::to_string(n));
  }
  const auto depth = tree.depths();
  std::vector<int> live_children(tree.size());
  std::priority_queue<std::pair<int, int>> leaves;
  for (int v = 0; v < tree.size(); ++v) {
    live_children[v] = static_cast<int>(tree.children[v].size());
    if (live_children[v] == 0 && v != tree.root) leaves.emplace(depth[v], v);
  }
  std::vector<bool> removed(tree.size(), false);
  for (int left = tree.size(); left > n; --left) {
    const int leaf = leaves.top().second;
    leaves.pop();
    removed[leaf] = true;
    const int par = tree.parent[leaf];
    if (--live_children[par] == 0 && par != tree.root) leaves.emplace(depth[par], par);
  }

  std::vector<int> new_id(tree.size(), -1);
  AggTree out;
  out.R = tree.R;
  out.params = tree.params;
  for (int v = 0; v < tree.size(); ++v) {
    if (removed[v]) continue;
    new_id[v] = out.size();
    out.parent.push_back(tree.parent[v] < 0 ? -1 : new_id[tree.parent[v]]);
    out.children.emplace_back();
  }
  for (int v = 0; v < tree.size(); ++v) {
    if (removed[v]) continue;
    for (int c : tree.children[v]) {
      if (!removed[c]) out.children[new_id[v]].push_back(new_id[c]);
    }
  }
  out.root = new_id[tree.root];
  return out;
}

}  // namespace tokensched::complete
