#include <algorithm>
#include <climits>

#include "tokensched/approx.hpp"
#include "tokensched/bounds.hpp"
#include "tokensched/errors.hpp"
#include "tokensched/rng.hpp"

namespace tokensched::approx {

namespace {

void check_paths(const Graph& g, const DirectedPathSet& dp) {
  for (const auto& path : dp.paths) {
    if (path.empty()) throw InputError("routing: empty path");
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      if (!g.has_edge(path[i], path[i + 1])) throw InputError("routing: path leaves the graph");
    }
  }
}

// Packet i waits delays[i] steps at its source, then moves one hop per step
// whenever it heads its node's FIFO queue.
RouteResult simulate_packets(const Graph& g, const NetworkParams& p, const DirectedPathSet& dp,
                             const std::vector<int>& delays) {
  const int k = dp.size();
  RouteResult out;
  out.delays = delays;
  std::vector<std::size_t> pos(k, 0);
  std::vector<int> ready(delays);
  int remaining = 0;
  for (const auto& path : dp.paths) remaining += path.size() > 1;
  int steps = 0;
  std::vector<int> chosen(g.n());
  for (int step = 0; remaining > 0; ++step) {
    std::fill(chosen.begin(), chosen.end(), -1);
    for (int i = 0; i < k; ++i) {
      const auto& path = dp.paths[i];
      if (pos[i] + 1 >= path.size() || ready[i] > step) continue;
      int& c = chosen[path[pos[i]]];
      if (c < 0 || ready[i] < ready[c] || (ready[i] == ready[c] && i < c)) c = i;
    }
    for (int v = 0; v < g.n(); ++v) {
      const int i = chosen[v];
      if (i < 0) continue;
      const auto& path = dp.paths[i];
      out.fragment.actions.push_back(make_send(step * p.tm + 1, v, path[pos[i] + 1]));
      ++pos[i];
      ready[i] = step + 1;
      if (pos[i] + 1 == path.size()) {
        --remaining;
        steps = std::max(steps, step + 1);
      }
    }
  }
  out.makespan = steps * p.tm;
  out.fragment.length = out.makespan;
  out.fragment.sort_actions();
  return out;
}

}  // namespace

RouteResult route_without_delays(const Graph& g, const NetworkParams& p,
                                 const DirectedPathSet& dp) {
  check_paths(g, dp);
  RouteResult r = simulate_packets(g, p, dp, std::vector<int>(dp.size(), 0));
  r.attempts = 1;
  return r;
}

RouteResult opt_route(const Graph& g, const NetworkParams& p, const DirectedPathSet& dp,
                      std::uint64_t seed) {
  check_paths(g, dp);
  const int con = congestion(dp.paths, g.n());
  const int dil = dilation(dp.paths);
  const long long target_steps = static_cast<long long>(ApproxConstants::kRouteSlack) *
                                 (con + dil) * std::max(1, ceil_log2(g.n() + 2));
  const Rng root(seed);
  RouteResult best;
  for (int attempt = 0; attempt < ApproxConstants::kRouteAttempts; ++attempt) {
    Rng rng = root.child(static_cast<std::uint64_t>(attempt));
    std::vector<int> delays(dp.size(), 0);
    for (int& d : delays) d = con > 0 ? static_cast<int>(rng.below(static_cast<std::uint64_t>(con))) : 0;
    RouteResult r = simulate_packets(g, p, dp, delays);
    if (attempt == 0 || r.makespan < best.makespan) best = std::move(r);
    best.attempts = attempt + 1;
    if (best.makespan <= target_steps * p.tm) break;
  }
  return best;
}

Schedule route_paths_m(const Graph& g, const NetworkParams& p, const DirectedPathSet& dp,
                       std::uint64_t seed) {
  if (dp.empty()) return {};
  RouteResult r = opt_route(g, p, dp, seed);
  Schedule s = std::move(r.fragment);
  for (int sink : dp.sinks()) s.actions.push_back(make_compute(r.makespan + 1, sink));
  s.length = r.makespan + p.tc;
  s.sort_actions();
  return s;
}

Schedule route_paths_c(const Graph& g, const NetworkParams& p, const DirectedPathSet& dp,
                       const std::vector<int>& token_counts) {
  check_paths(g, dp);
  if (static_cast<int>(token_counts.size()) != g.n()) {
    throw InputError("route_paths_c: token_counts must have one entry per node");
  }
  const int n = g.n();
  const int k = dp.size();
  std::vector<int> count = token_counts;
  std::vector<char> asleep(n, 0);
  for (int v = 0; v < n; ++v) asleep[v] = count[v] >= 2;
  for (int s : dp.sinks()) asleep[s] = 1;
  // Packets present at each node, by path index.
  std::vector<std::vector<int>> carrying(n);
  std::vector<std::size_t> pos(k, 0);
  for (int i = 0; i < k; ++i) carrying[dp.paths[i].front()].push_back(i);

  Schedule s;
  const int max_steps = 2 * dilation(dp.paths);
  int steps = 0;
  std::vector<std::pair<int, int>> moves;  // (packet, from)
  for (int step = 0; step < max_steps; ++step) {
    moves.clear();
    for (int v = 0; v < n; ++v) {
      if (asleep[v] || count[v] != 1 || carrying[v].size() != 1) continue;
      const int i = carrying[v].front();
      if (pos[i] + 1 >= dp.paths[i].size()) continue;
      moves.push_back({i, v});
    }
    if (moves.empty()) break;
    for (auto [i, v] : moves) {
      const int next = dp.paths[i][pos[i] + 1];
      s.actions.push_back(make_send(step * p.tm + 1, v, next));
      carrying[v].clear();
      --count[v];
      ++pos[i];
    }
    for (auto [i, v] : moves) {
      const int at = dp.paths[i][pos[i]];
      carrying[at].push_back(i);
      ++count[at];
    }
    for (auto [i, v] : moves) {
      const int at = dp.paths[i][pos[i]];
      if (count[at] >= 2) asleep[at] = 1;
    }
    steps = step + 1;
  }

  const int start = steps * p.tm + 1;
  int merges = 0;
  for (int v = 0; v < n; ++v) {
    for (int j = 0; j + 1 < count[v]; ++j) s.actions.push_back(make_compute(start + j * p.tc, v));
    merges = std::max(merges, count[v] - 1);
  }
  s.length = steps * p.tm + merges * p.tc;
  s.sort_actions();
  return s;
}

Schedule route_paths_c(const Graph& g, const NetworkParams& p, const DirectedPathSet& dp) {
  std::vector<int> counts(g.n(), 0);
  for (const auto& path : dp.paths) {
    if (path.empty()) throw InputError("routing: empty path");
    counts[path.front()] = 1;
    counts[path.back()] = 1;
  }
  return route_paths_c(g, p, dp, counts);
}

}  // namespace tokensched::approx
