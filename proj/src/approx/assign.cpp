#include <algorithm>
#include <climits>
#include <deque>
#include <map>

#include "tokensched/approx.hpp"
#include "tokensched/errors.hpp"

namespace tokensched::approx {

DirectedPathSet assign_paths(const std::vector<VertexPath>& paths, const std::vector<int>& W_in) {
  std::vector<int> W = W_in;
  std::sort(W.begin(), W.end());
  std::map<int, const VertexPath*> path_of;
  std::map<int, int> target;
  std::map<int, bool> alive;
  for (int w : W) alive[w] = true;
  for (const auto& p : paths) {
    if (p.size() < 2 || !alive.count(p.front()) || !alive.count(p.back()) ||
        p.front() == p.back()) {
      throw InputError("assign_paths: every path needs two distinct endpoints in W");
    }
    if (path_of.count(p.front())) throw InputError("assign_paths: two paths share a source");
    path_of[p.front()] = &p;
    target[p.front()] = p.back();
  }

  auto has_arc = [&](int w) {
    auto it = target.find(w);
    return alive[w] && it != target.end() && alive[it->second];
  };
  auto in_neighbors = [&](int x) {
    std::vector<int> out;
    for (const auto& [w, t] : target) {
      if (t == x && has_arc(w)) out.push_back(w);
    }
    return out;
  };

  // Longest in-tree chain below each node; nodes on cycles never peel off.
  std::map<int, int> indeg;
  for (const auto& [w, t] : target) ++indeg[t];
  std::map<int, int> height;
  std::deque<int> ready;
  for (int w : W) {
    if (indeg[w] == 0) {
      ready.push_back(w);
      height[w] = 0;
    }
  }
  while (!ready.empty()) {
    const int u = ready.front();
    ready.pop_front();
    auto it = target.find(u);
    if (it == target.end()) continue;
    const int t = it->second;
    height[t] = std::max(height[t], height[u] + 1);
    if (--indeg[t] == 0) ready.push_back(t);
  }
  std::vector<std::pair<int, int>> order;
  for (int w : W) order.push_back({indeg[w] > 0 ? INT_MAX : height[w], w});
  std::sort(order.begin(), order.end());

  DirectedPathSet out;
  for (const auto& [h, x] : order) {
    if (!alive[x]) continue;
    auto ins = in_neighbors(x);
    if (ins.size() < 2) continue;
    if (ins.size() % 2 == 1) {
      target.erase(ins.back());
      ins.pop_back();
    }
    for (std::size_t i = 0; i + 1 < ins.size(); i += 2) {
      VertexPath joined = *path_of[ins[i]];
      const VertexPath& second = *path_of[ins[i + 1]];
      for (auto it = second.rbegin() + 1; it != second.rend(); ++it) joined.push_back(*it);
      out.paths.push_back(excise_loops(joined));
      alive[ins[i]] = false;
      alive[ins[i + 1]] = false;
    }
    alive[x] = false;
  }

  // What is left has in- and out-degree at most one.
  std::map<int, int> source_of;
  for (const auto& [w, t] : target) {
    if (has_arc(w)) source_of[t] = w;
  }
  std::map<int, bool> visited;
  auto walk = [&](int start) {
    int cur = start;
    for (int i = 1; !visited[cur] && has_arc(cur); ++i) {
      visited[cur] = true;
      const int next = target[cur];
      if (i % 2 == 1 && next != start) out.paths.push_back(*path_of[cur]);
      cur = next;
    }
    visited[cur] = true;
  };
  for (int w : W) {
    if (alive[w] && !visited[w] && !source_of.count(w) && has_arc(w)) walk(w);
  }
  for (int w : W) {
    if (alive[w] && !visited[w] && has_arc(w)) walk(w);
  }
  return out;
}

}  // namespace tokensched::approx
