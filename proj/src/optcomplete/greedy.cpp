#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "tokensched/errors.hpp"
#include "tokensched/optcomplete.hpp"

namespace tokensched::complete {

Schedule greedy_schedule(const AggTree& tree, const TreeEmbedding& embedding,
                         const NetworkParams& p) {
  check_params(p);
  const int n = tree.size();
  if (static_cast<int>(embedding.size()) != n) {
    throw InputError("embedding size does not match the tree");
  }
  std::vector<int> tokens(n, 1);
  std::vector<int> busy_until(n, 0);
  std::vector<int> heard(n, 0);
  std::vector<bool> sent(n, false);
  // Completion round -> nodes gaining one token at its start.
  std::map<int, std::vector<int>> arrivals;
  std::map<int, std::vector<int>> child_reports;

  Schedule s;
  int unsent = n - 1;
  int merges_left = n - 1;
  for (int r = 1; unsent > 0 || merges_left > 0; ++r) {
    if (auto it = arrivals.find(r); it != arrivals.end()) {
      for (int v : it->second) ++tokens[v];
      arrivals.erase(it);
    }
    if (auto it = child_reports.find(r); it != child_reports.end()) {
      for (int v : it->second) ++heard[v];
      child_reports.erase(it);
    }
    for (int v = 0; v < n; ++v) {
      if (busy_until[v] >= r) continue;
      if (tokens[v] >= 2) {
        s.actions.push_back(make_compute(r, embedding[v]));
        tokens[v] -= 2;
        busy_until[v] = r + p.tc - 1;
        arrivals[r + p.tc].push_back(v);
        --merges_left;
      } else if (v != tree.root && !sent[v] && tokens[v] == 1 &&
                 heard[v] == static_cast<int>(tree.children[v].size())) {
        const int par = tree.parent[v];
        s.actions.push_back(make_send(r, embedding[v], embedding[par]));
        tokens[v] = 0;
        sent[v] = true;
        busy_until[v] = r + p.tm - 1;
        arrivals[r + p.tm].push_back(par);
        child_reports[r + p.tm].push_back(par);
        --unsent;
      }
    }
  }
  s.length = std::max(last_occupied_round(s, p), tree.R);
  s.sort_actions();
  return s;
}

Schedule opt_complete(int n, const NetworkParams& p) {
  check_params(p);
  if (n < 1) throw InputError("opt_complete needs n >= 1");
  AggTree tree = build_tree(r_star(n, p), p);
  if (tree.size() > n) tree = prune_tree(tree, n);
  TreeEmbedding identity(n);
  for (int v = 0; v < n; ++v) identity[v] = v;
  return greedy_schedule(tree, identity, p);
}

namespace {

long long ceil_clean(double x) {
  return static_cast<long long>(std::ceil(x - 1e-9));
}

}  // namespace

Baselines baseline_lengths(long long n, const NetworkParams& p) {
  check_params(p);
  if (n < 1) throw InputError("baseline_lengths needs n >= 1");
  const double lg = std::log2(static_cast<double>(n));
  Baselines b;
  b.naive_binary = ceil_clean(lg * (p.tc + p.tm) + lg * p.tc);
  b.pipelined_binary = ceil_clean(2.0 * p.tc * lg + p.tm * lg);
  b.optimal = r_star(n, p);
  b.compute_lb = ceil_clean(p.tc * lg);
  return b;
}

}  // namespace tokensched::complete
