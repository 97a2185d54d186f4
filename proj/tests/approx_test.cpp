#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "tokensched/approx.hpp"
#include "tokensched/bounds.hpp"
#include "tokensched/errors.hpp"
#include "tokensched/flow_lp.hpp"
#include "tokensched/generators.hpp"
#include "tokensched/graph.hpp"
#include "tokensched/replay.hpp"
#include "tokensched/rng.hpp"
#include "tokensched/simplex.hpp"

namespace tokensched::approx {
namespace {

std::vector<int> all_nodes(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<int> even_prefix(int n) {
  auto v = all_nodes(n);
  if (v.size() % 2) v.pop_back();
  return v;
}

TEST(Simplex, TextbookOptimum) {
  lp::Problem pr;
  const int x = pr.add_variable(-3);
  const int y = pr.add_variable(-5);
  pr.add_row({{{x, 1}}, lp::Sense::Le, 4});
  pr.add_row({{{y, 2}}, lp::Sense::Le, 12});
  pr.add_row({{{x, 3}, {y, 2}}, lp::Sense::Le, 18});
  const auto sol = lp::solve(pr);
  ASSERT_EQ(sol.status, lp::Status::Optimal);
  EXPECT_NEAR(sol.objective, -36, 1e-9);
  EXPECT_NEAR(sol.x[x], 2, 1e-9);
  EXPECT_NEAR(sol.x[y], 6, 1e-9);
  double dual_obj = 0;
  for (std::size_t i = 0; i < pr.rows.size(); ++i) dual_obj += sol.duals[i] * pr.rows[i].rhs;
  EXPECT_NEAR(dual_obj, sol.objective, 1e-9);
}

TEST(Simplex, EqualityAndGreaterRows) {
  lp::Problem pr;
  const int a = pr.add_variable(1);
  const int b = pr.add_variable(2);
  pr.add_row({{{a, 1}, {b, 1}}, lp::Sense::Eq, 3});
  pr.add_row({{{b, 1}}, lp::Sense::Ge, 1});
  const auto sol = lp::solve(pr);
  ASSERT_EQ(sol.status, lp::Status::Optimal);
  EXPECT_NEAR(sol.objective, 4, 1e-9);
  // Reduced costs are nonnegative at the optimum.
  for (int j = 0; j < pr.num_vars; ++j) {
    double rc = pr.objective[j];
    for (std::size_t i = 0; i < pr.rows.size(); ++i) {
      for (auto [v, c] : pr.rows[i].terms) {
        if (v == j) rc -= sol.duals[i] * c;
      }
    }
    EXPECT_GE(rc, -1e-9);
  }
}

TEST(Simplex, InfeasibleAndUnbounded) {
  lp::Problem bad;
  const int x = bad.add_variable(1);
  bad.add_row({{{x, 1}}, lp::Sense::Ge, 2});
  bad.add_row({{{x, 1}}, lp::Sense::Le, 1});
  EXPECT_EQ(lp::solve(bad).status, lp::Status::Infeasible);

  lp::Problem open;
  const int y = open.add_variable(-1);
  open.add_row({{{y, 1}}, lp::Sense::Ge, 0});
  EXPECT_EQ(lp::solve(open).status, lp::Status::Unbounded);
}

TEST(Simplex, NegativeRightHandSide) {
  lp::Problem pr;
  const int x = pr.add_variable(1);
  pr.add_row({{{x, -1}}, lp::Sense::Le, -2});
  const auto sol = lp::solve(pr);
  ASSERT_EQ(sol.status, lp::Status::Optimal);
  EXPECT_NEAR(sol.x[x], 2, 1e-9);
}

TEST(FlowLp, TimeExpansionArcCount) {
  const Graph g = grid_graph(2, 3);
  for (int L = 1; L <= 4; ++L) {
    EXPECT_EQ(time_expand(g, L).arcs.size(), 2 * g.m() * static_cast<std::size_t>(L));
  }
  EXPECT_THROW(build_flow_lp(g, {0}, 2), InputError);
  EXPECT_THROW(build_flow_lp(g, {0, 1}, 0), InputError);
}

TEST(FlowLp, SmallCongestionValues) {
  // K_2: both endpoints count themselves and receive one unit.
  const auto k2 = build_flow_lp(complete_graph(2), {0, 1}, 1);
  EXPECT_NEAR(solve_flow_lp(k2).z, 2, 1e-7);
  EXPECT_NEAR(solve_flow_lp_direct(k2).z, 2, 1e-7);
  // Star with three leaves in W: all traffic crosses the center.
  const auto star = build_flow_lp(star_graph(4), {1, 2}, 2);
  EXPECT_NEAR(solve_flow_lp(star).z, 2, 1e-7);
  EXPECT_NEAR(solve_flow_lp_direct(star).z, 2, 1e-7);
  const auto star3 = build_flow_lp(star_graph(4), {1, 2, 3}, 2);
  EXPECT_NEAR(solve_flow_lp(star3).z, 3, 1e-7);
  EXPECT_NEAR(solve_flow_lp_direct(star3).z, 3, 1e-7);
  const auto star4 = build_flow_lp(star_graph(5), {1, 2, 3, 4}, 2);
  EXPECT_NEAR(solve_flow_lp(star4).z, 4, 1e-7);
  EXPECT_NEAR(solve_flow_lp_direct(star4).z, 4, 1e-7);
}

TEST(FlowLp, ColumnGenerationMatchesArcLp) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int n = 4 + static_cast<int>(seed % 4);
    const Graph g = random_connected_graph(n, 0.45, seed);
    const auto W = even_prefix(n);
    for (int L = 1; L <= 3; ++L) {
      const auto lp = build_flow_lp(g, W, L);
      double direct = 0;
      bool direct_ok = true;
      try {
        direct = solve_flow_lp_direct(lp).z;
      } catch (const UnsolvableError&) {
        direct_ok = false;
      }
      if (!direct_ok) {
        EXPECT_THROW(solve_flow_lp(lp), UnsolvableError);
        continue;
      }
      EXPECT_NEAR(solve_flow_lp(lp).z, direct, 1e-6) << "seed " << seed << " L " << L;
    }
  }
}

TEST(FlowLp, PathDecompositionIsConsistent) {
  const Graph g = grid_graph(3, 4);
  const std::vector<int> W = {0, 3, 5, 8, 11, 6};
  const FlowSolution sol = solve_flow_lp(g, W, 4);
  std::vector<double> mass(W.size(), 0);
  std::set<int> wset(W.begin(), W.end());
  for (const auto& wp : sol.paths) {
    mass[wp.commodity] += wp.weight;
    EXPECT_EQ(wp.path.front(), W[wp.commodity]);
    EXPECT_TRUE(wset.count(wp.path.back()));
    EXPECT_NE(wp.path.back(), wp.path.front());
    EXPECT_LE(static_cast<int>(wp.path.size()) - 1, 4);
    for (std::size_t i = 1; i + 1 < wp.path.size(); ++i) EXPECT_FALSE(wset.count(wp.path[i]));
  }
  for (double m : mass) EXPECT_NEAR(m, 1.0, 1e-7);
  // Recomputed vertex load never exceeds z.
  std::vector<double> load(g.n(), 0);
  for (int w : W) load[w] += 1;
  for (const auto& wp : sol.paths) {
    for (std::size_t i = 1; i < wp.path.size(); ++i) load[wp.path[i]] += wp.weight;
  }
  for (double l : load) EXPECT_LE(l, sol.z + 1e-7);
}

TEST(FlowLp, UnreachableCommodityThrows) {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  EXPECT_THROW(solve_flow_lp(g, {0, 1, 2}, 2), UnsolvableError);
}

TEST(ChooseL, EvaluatesDoublingsAndXi) {
  const Graph g = path_graph(6);
  const NetworkParams p{1, 2};
  const auto W = all_nodes(6);
  EXPECT_EQ(xi_bound(g, p), (2LL * 5 * (1 + 5 * 2) + 1) / 2);
  const LChoice c = choose_L(g, W, p);
  ASSERT_FALSE(c.evaluated.empty());
  EXPECT_EQ(c.evaluated.front().first, diameter(g));
  EXPECT_EQ(c.evaluated.back().first, c.xi);
  double best = 1e18;
  for (auto [L, obj] : c.evaluated) best = std::min(best, obj);
  EXPECT_NEAR(c.objective, best, 1e-9);
  EXPECT_NEAR(c.objective, p.tm * c.L + p.min_cost() * c.flow.z, 1e-9);
}

TEST(Sampling, PathsRunBetweenDistinctWNodes) {
  const Graph g = grid_graph(5, 5);
  std::vector<int> W;
  for (int v = 0; v < 25; v += 2) W.push_back(v);
  W.pop_back();
  const LChoice c = choose_L(g, W, {1, 1});
  const SampledPaths a = sample_paths(c.flow, c.L, W, 77);
  const SampledPaths b = sample_paths(c.flow, c.L, W, 77);
  EXPECT_EQ(a.paths, b.paths);
  EXPECT_EQ(a.sample_count, sample_count(25));
  EXPECT_EQ(static_cast<int>(a.kept_per_sample.size()), a.sample_count);
  std::set<int> wset(W.begin(), W.end());
  std::set<int> starts;
  for (const auto& path : a.paths) {
    EXPECT_TRUE(wset.count(path.front()));
    EXPECT_TRUE(wset.count(path.back()));
    EXPECT_NE(path.front(), path.back());
    EXPECT_TRUE(starts.insert(path.front()).second);
    EXPECT_EQ(excise_loops(path), path);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) EXPECT_TRUE(g.has_edge(path[i], path[i + 1]));
  }
  EXPECT_LE(congestion(a.paths, g.n()), a.threshold + 1e-9);
}

TEST(Assign, ProducesDisjointEndpointRoles) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Graph g = random_connected_graph(16, 0.2, seed);
    std::vector<int> W;
    for (int v = 0; v < 16; v += 1 + static_cast<int>(seed % 2)) W.push_back(v);
    if (W.size() % 2) W.pop_back();
    const LChoice c = choose_L(g, W, {1, 1});
    const SampledPaths sp = sample_paths(c.flow, c.L, W, seed);
    const DirectedPathSet dp = assign_paths(sp.paths, W);
    EXPECT_EQ(path_set_problem(g, dp, W, true), "") << "seed " << seed;
    if (!sp.paths.empty()) {
      EXPECT_FALSE(dp.empty());
    }
  }
}

TEST(Assign, HubPairsAndCycles) {
  // Three paths into hub 0 plus a 2-cycle between 5 and 6.
  const std::vector<VertexPath> paths = {{1, 0}, {2, 0}, {3, 0}, {5, 6}, {6, 5}};
  const DirectedPathSet dp = assign_paths(paths, {0, 1, 2, 3, 5, 6});
  // Hub: 1 and 2 pair through 0; 3 (highest id) is dropped. Cycle: one arc.
  ASSERT_EQ(dp.size(), 2);
  EXPECT_EQ(dp.paths[0], (VertexPath{1, 0, 2}));
  EXPECT_EQ(dp.paths[1].size(), 2u);
}

TEST(Assign, TwoCycleKeepsOneArc) {
  const DirectedPathSet dp = assign_paths({{5, 6}, {6, 5}}, {5, 6});
  ASSERT_EQ(dp.size(), 1);
  EXPECT_EQ(dp.paths[0], (VertexPath{5, 6}));
}

TEST(Routing, MergesExactlyOneTokenPerPath) {
  const Graph g = grid_graph(4, 4);
  const DirectedPathSet dp{{{0, 1, 2, 3}, {12, 8, 4}, {15, 14, 10, 6}, {5, 9, 13}}};
  for (NetworkParams p : {NetworkParams{1, 1}, NetworkParams{3, 1}, NetworkParams{1, 3}}) {
    const Schedule s = route_paths_m(g, p, dp, 5);
    const ReplayResult rr = replay(g, p, s, initial_state(16));
    ASSERT_FALSE(rr.violation) << rr.violation->message;
    EXPECT_EQ(rr.final_state.token_count(), 16 - dp.size());
  }
}

TEST(Routing, DelaysStayBelowCongestion) {
  const Graph g = star_graph(7);
  const DirectedPathSet dp{{{1, 0, 2}, {3, 0, 4}, {5, 0, 6}}};
  const RouteResult r = opt_route(g, {1, 1}, dp, 9);
  for (int d : r.delays) {
    EXPECT_GE(d, 0);
    EXPECT_LT(d, congestion(dp.paths, 7));
  }
  EXPECT_GE(r.makespan, dilation(dp.paths));
}

TEST(Routing, SleepRouterHalvesAtLeast) {
  const Graph g = path_graph(8);
  // Paths sharing interior vertices make the sleep rule bite.
  const DirectedPathSet dp{{{0, 1, 2, 3}, {4, 5}, {7, 6}}};
  std::vector<int> counts(8, 1);
  const Schedule s = route_paths_c(g, {1, 1}, dp, counts);
  const ReplayResult rr = replay(g, {1, 1}, s, initial_state(8));
  ASSERT_FALSE(rr.violation) << rr.violation->message;
  EXPECT_LE(rr.final_state.token_count(), 8 - dp.size() / 2);
}

TEST(Routing, CrossingPathsMeetAtTheMiddle) {
  const Graph g = star_graph(5);
  const DirectedPathSet dp{{{1, 0, 2}, {3, 0, 4}}};
  const Schedule s = route_paths_c(g, {1, 1}, dp);
  TokenState start;
  start.held.resize(5);
  for (int v = 1; v < 5; ++v) start.held[v] = {{v}};
  const ReplayResult rr = replay(g, {1, 1}, s, start);
  ASSERT_FALSE(rr.violation);
  EXPECT_EQ(rr.final_state.count_at(0), 1);
  EXPECT_EQ(rr.final_state.held[0][0], (Token{1, 3}));
  EXPECT_EQ(rr.final_state.token_count(), 3);
}

TEST(SolveTc, EdgeTakesOneSendAndOneMerge) {
  for (NetworkParams p : {NetworkParams{1, 1}, NetworkParams{3, 2}}) {
    EXPECT_EQ(solve_tc(complete_graph(2), p, 0).schedule.length, p.tc + p.tm);
  }
}

TEST(SolveTc, ValidOnAssortedGraphs) {
  const std::vector<Graph> graphs = {path_graph(2), path_graph(9), cycle_graph(11),
                                     star_graph(10), grid_graph(5, 6), complete_graph(8),
                                     random_connected_graph(30, 0.1, 3)};
  for (const auto& g : graphs) {
    for (NetworkParams p : {NetworkParams{1, 1}, NetworkParams{3, 1}, NetworkParams{1, 3}}) {
      const SolveResult r = solve_tc(g, p, 42);
      const ValidationReport v = validate_schedule(g, p, r.schedule);
      EXPECT_TRUE(v.valid) << (v.violation ? v.violation->message : "tokens left");
      EXPECT_GE(r.schedule.length, lower_bounds(g, p).combined_lb);
      EXPECT_FALSE(r.iterations.empty());
    }
  }
  EXPECT_TRUE(solve_tc(Graph(1), {1, 1}, 1).schedule.actions.empty());
}

TEST(SolveTc, DeterministicPerSeed) {
  const Graph g = random_connected_graph(22, 0.15, 8);
  const SolveResult a = solve_tc(g, {2, 1}, 123);
  const SolveResult b = solve_tc(g, {2, 1}, 123);
  EXPECT_EQ(a.schedule, b.schedule);
  EXPECT_EQ(report_csv(a, 123), report_csv(b, 123));
}

TEST(SolveTc, RejectsDisconnectedGraphs) {
  Graph g(3);
  g.add_edge(0, 1);
  EXPECT_THROW(solve_tc(g, {1, 1}, 0), UnsolvableError);
}

TEST(SolveTc, ReportHasHeaderAndOneRowPerIteration) {
  const SolveResult r = solve_tc(grid_graph(4, 5), {1, 2}, 6);
  const std::string csv = report_csv(r, 6);
  EXPECT_NE(csv.find("iter,W,L,z,con,dil,U,fragment_rounds,router\n"), std::string::npos);
  const auto rows = std::count(csv.begin(), csv.end(), '\n');
  const auto comments = std::count(csv.begin(), csv.end(), '#');
  EXPECT_EQ(rows, comments + 1 + static_cast<long>(r.iterations.size()));
}

TEST(FallbackPairs, NearestPartnerBySmallestId) {
  const DirectedPathSet dp = fallback_pairs(path_graph(6), {0, 2, 3, 5});
  ASSERT_EQ(dp.size(), 2);
  EXPECT_EQ(dp.paths[0], (VertexPath{0, 1, 2}));
  EXPECT_EQ(dp.paths[1], (VertexPath{3, 4, 5}));
}

}  // namespace
}  // namespace tokensched::approx
