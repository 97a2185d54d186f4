#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "tokensched/graph.hpp"
#include "tokensched/params.hpp"
#include "tokensched/paths.hpp"
#include "tokensched/simplex.hpp"

namespace tokensched::approx {

// Layers 0..L_hat; hop r runs from layer r to layer r+1 along a base edge,
// in either direction.
struct TimeExpandedArc {
  int layer = 0;
  int from = -1;
  int to = -1;
  auto operator<=>(const TimeExpandedArc&) const = default;
};

struct TimeExpandedGraph {
  int n = 0;
  int L_hat = 0;
  std::vector<TimeExpandedArc> arcs;  // 2 |E| L_hat arcs
};

TimeExpandedGraph time_expand(const Graph& g, int L_hat);

// Multicommodity flow that minimizes vertex congestion z. Commodity w
// leaves w at layer 0 and is absorbed at the first vertex of W \ {w} it
// enters; it never re-enters w. Congestion at v counts every unit of flow
// entering v plus one for v itself when v is in W.
struct FlowLp {
  Graph graph;
  std::vector<int> W;
  int L_hat = 0;
  TimeExpandedGraph expanded;
  lp::Problem problem;
  int z_var = -1;
  // var_arc[i] = (commodity index, arc) for flow variable i.
  std::vector<std::pair<int, TimeExpandedArc>> var_arc;
};

// Explicit arc formulation. Throws InputError when |W| < 2 or L_hat < 1.
FlowLp build_flow_lp(const Graph& g, const std::vector<int>& W, int L_hat);

struct WeightedPath {
  int commodity = 0;  // index into W
  VertexPath path;
  double weight = 0.0;
};

using ArcFlow = std::map<std::tuple<int, int, int>, double>;  // (layer, from, to)

struct FlowSolution {
  int n = 0;  // base graph size
  std::vector<int> W;
  int L_hat = 0;
  double z = 0.0;
  // Flow of each commodity on the time-expanded arcs.
  std::vector<ArcFlow> flow;
  // Path decomposition with unit total weight per commodity (column
  // generation only; empty for the direct solve).
  std::vector<WeightedPath> paths;
  int pricing_rounds = 0;
};

// Solves the LP by column generation over hop-limited paths. Hops beyond
// n - 1 never help once loops are cut, so the layer count is capped there.
// Throws UnsolvableError when some commodity cannot reach W \ {w}.
FlowSolution solve_flow_lp(const FlowLp& lp);
FlowSolution solve_flow_lp(const Graph& g, const std::vector<int>& W, int L_hat);

// Solves the explicit arc LP with the simplex directly. Small inputs only.
FlowSolution solve_flow_lp_direct(const FlowLp& lp);

struct LChoice {
  int L = 0;
  double objective = 0.0;
  long long xi = 0;
  FlowSolution flow;
  std::vector<std::pair<int, double>> evaluated;  // (L, objective)
};

// ceil(2 (n - 1)(tc + D tm) / tm).
long long xi_bound(const Graph& g, const NetworkParams& p);

// argmin of tm L + min(tc, tm) z(L) over {D, 2D, 4D, ...} up to xi, plus xi
// itself; ties go to the smaller L.
LChoice choose_L(const Graph& g, const std::vector<int>& W, const NetworkParams& p);

}  // namespace tokensched::approx
