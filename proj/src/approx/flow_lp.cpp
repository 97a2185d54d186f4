#include "tokensched/flow_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "tokensched/errors.hpp"

namespace tokensched::approx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelativeGap = 1e-8;
constexpr int kMaxPricingRounds = 5000;

void check_inputs(const Graph& g, const std::vector<int>& W, int L_hat) {
  if (W.size() < 2) throw InputError("flow LP needs |W| >= 2");
  if (L_hat < 1) throw InputError("flow LP needs L_hat >= 1");
  std::set<int> seen;
  for (int w : W) {
    if (w < 0 || w >= g.n()) throw InputError("W contains an unknown node");
    if (!seen.insert(w).second) throw InputError("W contains a duplicate node");
  }
}

std::vector<char> membership(const Graph& g, const std::vector<int>& W) {
  std::vector<char> in_w(g.n(), 0);
  for (int w : W) in_w[w] = 1;
  return in_w;
}

// Cheapest walk from w with at most `hops` hops that ends at the first
// vertex of W \ {w} it enters, where a walk costs the sum of its vertex
// weights. Ties go to the walk found first in id order. Returns an empty
// path when nothing is reachable.
VertexPath cheapest_path(const Graph& g, const std::vector<char>& in_w, int w, int hops,
                         const std::vector<double>& weight, double& cost) {
  const int n = g.n();
  std::vector<std::vector<double>> best(hops + 1, std::vector<double>(n, kInf));
  std::vector<std::vector<int>> pred(hops + 1, std::vector<int>(n, -1));
  best[0][w] = weight[w];
  double end_cost = kInf;
  int end_layer = -1;
  int end_vertex = -1;
  for (int h = 1; h <= hops; ++h) {
    for (int u = 0; u < n; ++u) {
      if (best[h - 1][u] == kInf) continue;
      if (u != w && in_w[u]) continue;
      for (int v : g.neighbors(u)) {
        if (v == w) continue;
        const double c = best[h - 1][u] + weight[v];
        if (c < best[h][v]) {
          best[h][v] = c;
          pred[h][v] = u;
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      if (v != w && in_w[v] && best[h][v] < end_cost) {
        end_cost = best[h][v];
        end_layer = h;
        end_vertex = v;
      }
    }
  }
  cost = end_cost;
  if (end_vertex < 0) return {};
  VertexPath walk(end_layer + 1);
  int v = end_vertex;
  for (int h = end_layer; h >= 0; --h) {
    walk[h] = v;
    v = pred[h][v];
  }
  return excise_loops(walk);
}

double path_cost(const VertexPath& p, const std::vector<double>& weight) {
  double c = 0.0;
  for (int v : p) c += weight[v];
  return c;
}

void add_path_flow(ArcFlow& flow, const VertexPath& p, double weight) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    flow[{static_cast<int>(i), p[i], p[i + 1]}] += weight;
  }
}

}  // namespace

TimeExpandedGraph time_expand(const Graph& g, int L_hat) {
  TimeExpandedGraph t;
  t.n = g.n();
  t.L_hat = L_hat;
  for (int r = 0; r < L_hat; ++r) {
    for (int u = 0; u < g.n(); ++u) {
      for (int v : g.neighbors(u)) t.arcs.push_back({r, u, v});
    }
  }
  return t;
}

FlowLp build_flow_lp(const Graph& g, const std::vector<int>& W, int L_hat) {
  check_inputs(g, W, L_hat);
  FlowLp lp;
  lp.graph = g;
  lp.W = W;
  lp.L_hat = L_hat;
  lp.expanded = time_expand(g, L_hat);
  const auto in_w = membership(g, W);
  const int n = g.n();
  auto& pr = lp.problem;
  lp.z_var = pr.add_variable(1.0);

  std::vector<lp::Constraint> congestion_rows(n);
  for (int v = 0; v < n; ++v) {
    congestion_rows[v].sense = lp::Sense::Le;
    congestion_rows[v].rhs = in_w[v] ? -1.0 : 0.0;
    congestion_rows[v].terms.push_back({lp.z_var, -1.0});
  }
  for (int k = 0; k < static_cast<int>(W.size()); ++k) {
    const int w = W[k];
    lp::Constraint source{{}, lp::Sense::Eq, 1.0};
    // conserve[r][x]: inflow at layer r minus outflow at layer r, for x not in W.
    std::vector<std::vector<lp::Constraint>> conserve(
        L_hat, std::vector<lp::Constraint>(n, lp::Constraint{{}, lp::Sense::Eq, 0.0}));
    for (const auto& arc : lp.expanded.arcs) {
      const int u = arc.from;
      const int v = arc.to;
      if (v == w) continue;
      if (u == w ? arc.layer > 0 : in_w[u]) continue;
      if (arc.layer == L_hat - 1 && !in_w[v]) continue;
      const int var = pr.add_variable(0.0);
      lp.var_arc.push_back({k, arc});
      if (u == w) source.terms.push_back({var, 1.0});
      if (!in_w[u]) conserve[arc.layer][u].terms.push_back({var, -1.0});
      if (!in_w[v]) conserve[arc.layer + 1][v].terms.push_back({var, 1.0});
      congestion_rows[v].terms.push_back({var, 1.0});
    }
    pr.add_row(std::move(source));
    for (int r = 1; r < L_hat; ++r) {
      for (int x = 0; x < n; ++x) {
        if (!in_w[x] && !conserve[r][x].terms.empty()) pr.add_row(std::move(conserve[r][x]));
      }
    }
  }
  for (auto& row : congestion_rows) pr.add_row(std::move(row));
  return lp;
}

FlowSolution solve_flow_lp_direct(const FlowLp& lp) {
  lp::Solution sol = lp::solve(lp.problem);
  if (sol.status == lp::Status::Infeasible) {
    throw UnsolvableError("flow LP infeasible: some w cannot reach W \\ {w} in L_hat hops");
  }
  if (sol.status != lp::Status::Optimal) throw std::runtime_error("flow LP solve failed");
  FlowSolution out;
  out.n = lp.graph.n();
  out.W = lp.W;
  out.L_hat = lp.L_hat;
  out.z = sol.objective;
  out.flow.resize(lp.W.size());
  for (std::size_t i = 0; i < lp.var_arc.size(); ++i) {
    const double f = sol.x[i + 1];
    if (f <= 1e-12) continue;
    const auto& [k, arc] = lp.var_arc[i];
    out.flow[k][{arc.layer, arc.from, arc.to}] += f;
  }
  return out;
}

FlowSolution solve_flow_lp(const Graph& g, const std::vector<int>& W, int L_hat) {
  check_inputs(g, W, L_hat);
  const int n = g.n();
  const int k_count = static_cast<int>(W.size());
  const int hops = std::min(L_hat, std::max(1, n - 1));
  const auto in_w = membership(g, W);

  std::vector<WeightedPath> columns;
  std::set<std::pair<int, VertexPath>> known;
  const std::vector<double> unit(n, 1.0);
  for (int k = 0; k < k_count; ++k) {
    double cost = 0.0;
    VertexPath p = cheapest_path(g, in_w, W[k], hops, unit, cost);
    if (p.empty()) {
      throw UnsolvableError("flow LP infeasible: node " + std::to_string(W[k]) +
                            " cannot reach another W node");
    }
    known.insert({k, p});
    columns.push_back({k, std::move(p), 0.0});
  }

  FlowSolution out;
  out.n = n;
  out.W = W;
  out.L_hat = L_hat;
  lp::Solution sol;
  for (int round = 0;; ++round) {
    lp::Problem pr;
    const int z_var = pr.add_variable(1.0);
    for (std::size_t c = 0; c < columns.size(); ++c) pr.add_variable(0.0);
    std::vector<lp::Constraint> rows(k_count + n);
    for (int k = 0; k < k_count; ++k) rows[k] = {{}, lp::Sense::Eq, 1.0};
    for (int v = 0; v < n; ++v) rows[k_count + v] = {{{z_var, -1.0}}, lp::Sense::Le, 0.0};
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const int var = static_cast<int>(c) + 1;
      rows[columns[c].commodity].terms.push_back({var, 1.0});
      for (int v : columns[c].path) rows[k_count + v].terms.push_back({var, 1.0});
    }
    pr.rows = std::move(rows);
    sol = lp::solve(pr);
    if (sol.status != lp::Status::Optimal) throw std::runtime_error("flow LP master solve failed");
    out.pricing_rounds = round + 1;

    std::vector<double> weight(n);
    double total = 0.0;
    for (int v = 0; v < n; ++v) {
      weight[v] = std::max(0.0, -sol.duals[k_count + v]);
      total += weight[v];
    }
    if (total <= 0.0 || round + 1 >= kMaxPricingRounds) break;
    // Any feasible point has z >= sum over commodities of its cheapest
    // path under the normalized weights.
    double lower = 0.0;
    int added = 0;
    for (int k = 0; k < k_count; ++k) {
      double cost = 0.0;
      VertexPath p = cheapest_path(g, in_w, W[k], hops, weight, cost);
      cost = path_cost(p, weight);
      lower += cost / total;
      const double reduced = cost - sol.duals[k];
      if (reduced < -1e-10 && known.insert({k, p}).second) {
        columns.push_back({k, std::move(p), 0.0});
        ++added;
      }
    }
    if (added == 0 || sol.objective - lower <= kRelativeGap * std::max(1.0, sol.objective)) break;
  }

  out.flow.assign(k_count, {});
  std::vector<double> load(n, 0.0);
  std::vector<double> mass(k_count, 0.0);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const double x = sol.x[c + 1];
    if (x <= 1e-12) continue;
    mass[columns[c].commodity] += x;
  }
  for (std::size_t c = 0; c < columns.size(); ++c) {
    double x = sol.x[c + 1];
    if (x <= 1e-12) continue;
    x /= mass[columns[c].commodity];
    WeightedPath wp = columns[c];
    wp.weight = x;
    add_path_flow(out.flow[wp.commodity], wp.path, x);
    for (int v : wp.path) load[v] += x;
    out.paths.push_back(std::move(wp));
  }
  out.z = std::max(sol.objective, *std::max_element(load.begin(), load.end()));
  return out;
}

FlowSolution solve_flow_lp(const FlowLp& lp) { return solve_flow_lp(lp.graph, lp.W, lp.L_hat); }

long long xi_bound(const Graph& g, const NetworkParams& p) {
  const long long D = diameter(g);
  const long long num = 2LL * (g.n() - 1) * (p.tc + D * p.tm);
  return std::max<long long>(1, (num + p.tm - 1) / p.tm);
}

LChoice choose_L(const Graph& g, const std::vector<int>& W, const NetworkParams& p) {
  check_params(p);
  const int D = std::max(1, diameter(g));
  LChoice out;
  out.xi = std::max<long long>(xi_bound(g, p), D);
  std::vector<long long> grid;
  for (long long L = D; L <= out.xi; L *= 2) grid.push_back(L);
  if (grid.back() != out.xi) grid.push_back(out.xi);

  const int cap = std::max(1, g.n() - 1);
  std::map<int, FlowSolution> by_hops;
  bool have = false;
  for (long long L : grid) {
    const int hops = static_cast<int>(std::min<long long>(L, cap));
    auto it = by_hops.find(hops);
    if (it == by_hops.end()) it = by_hops.emplace(hops, solve_flow_lp(g, W, hops)).first;
    const double objective = static_cast<double>(p.tm) * static_cast<double>(L) +
                             p.min_cost() * it->second.z;
    out.evaluated.push_back({static_cast<int>(std::min<long long>(L, INT32_MAX)), objective});
    if (!have || objective < out.objective - 1e-9) {
      have = true;
      out.L = static_cast<int>(std::min<long long>(L, INT32_MAX));
      out.objective = objective;
      out.flow = it->second;
      out.flow.L_hat = out.L;
    }
  }
  return out;
}

}  // namespace tokensched::approx
