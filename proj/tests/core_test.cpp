#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tokensched/bounds.hpp"
#include "tokensched/errors.hpp"
#include "tokensched/generators.hpp"
#include "tokensched/graph.hpp"
#include "tokensched/io.hpp"
#include "tokensched/replay.hpp"
#include "tokensched/rng.hpp"

namespace tokensched {
namespace {

Schedule make(int length, std::vector<Action> actions) {
  Schedule s;
  s.length = length;
  s.actions = std::move(actions);
  return s;
}

// ---------------------------------------------------------------------------
// Graph basics
// ---------------------------------------------------------------------------

TEST(Graph, RejectsSelfLoopsAndDuplicates) {
  Graph g(3);
  g.add_edge(0, 1);
  EXPECT_THROW(g.add_edge(1, 0), InputError);
  EXPECT_THROW(g.add_edge(2, 2), InputError);
  EXPECT_THROW(g.add_edge(0, 3), InputError);
  EXPECT_EQ(g.m(), 1u);
}

TEST(Graph, DistancesOnSmallFamilies) {
  EXPECT_EQ(diameter(path_graph(5)), 4);
  EXPECT_EQ(radius(path_graph(5)), 2);
  EXPECT_EQ(diameter(cycle_graph(6)), 3);
  EXPECT_EQ(radius(star_graph(6)), 1);
  EXPECT_EQ(diameter(grid_graph(3, 4)), 5);
  EXPECT_EQ(diameter(complete_graph(1)), 0);
  EXPECT_THROW(diameter(Graph(2)), UnsolvableError);
}

TEST(Graph, ShortestPathPrefersSmallIds) {
  auto p = shortest_path(cycle_graph(4), 0, 2);
  EXPECT_EQ(p, (std::vector<int>{0, 1, 2}));
}

TEST(Generators, RandomGraphIsConnectedAndReproducible) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph a = random_connected_graph(15, 0.2, seed);
    Graph b = random_connected_graph(15, 0.2, seed);
    EXPECT_TRUE(is_connected(a));
    EXPECT_EQ(a, b);
  }
}

TEST(Rng, ChildStreamsAreStableAndDistinct) {
  Rng root(42);
  Rng a = root.child(1);
  Rng b = root.child(1);
  Rng c = root.child(2);
  const auto x = a.next();
  EXPECT_EQ(x, b.next());
  EXPECT_NE(x, c.next());
  for (int i = 0; i < 1000; ++i) {
    EXPECT_LT(root.below(7), 7u);
    const double u = root.uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

// ---------------------------------------------------------------------------
// Validation rules
// ---------------------------------------------------------------------------

TEST(Validate, SingleNodeNeedsNothing) {
  auto rep = validate_schedule(Graph(1), {1, 1}, make(0, {}));
  EXPECT_TRUE(rep.valid);
  EXPECT_EQ(rep.final_token_count, 1);
}

TEST(Validate, EdgeSendThenCompute) {
  Graph g = path_graph(2);
  auto rep = validate_schedule(g, {1, 1}, make(2, {make_send(1, 1, 0), make_compute(2, 0)}));
  EXPECT_TRUE(rep.valid);
}

TEST(Validate, ComputeWithOneTokenIsRuleB) {
  Graph g = path_graph(2);
  auto rep = validate_schedule(g, {1, 1}, make(2, {make_compute(1, 0)}));
  ASSERT_FALSE(rep.valid);
  EXPECT_EQ(rep.violation->rule, 'b');
  EXPECT_EQ(rep.violation->round, 1);
  EXPECT_EQ(rep.violation->node, 0);
}

TEST(Validate, SendWithoutTokenIsRuleA) {
  Graph g = path_graph(3);
  // Node 1 forwards its token at round 1, then has nothing at round 2.
  auto rep = validate_schedule(
      g, {1, 1}, make(4, {make_send(1, 1, 0), make_send(2, 1, 2)}));
  ASSERT_FALSE(rep.valid);
  EXPECT_EQ(rep.violation->rule, 'a');
  EXPECT_EQ(rep.violation->round, 2);
}

TEST(Validate, OverlapIsRuleC) {
  Graph g = path_graph(2);
  auto rep = validate_schedule(
      g, {1, 3}, make(6, {make_send(1, 1, 0), make_send(2, 1, 0)}));
  ASSERT_FALSE(rep.valid);
  EXPECT_EQ(rep.violation->rule, 'c');
}

TEST(Validate, WindowPastLengthIsRuleD) {
  Graph g = path_graph(2);
  auto rep = validate_schedule(g, {2, 1}, make(2, {make_send(1, 1, 0), make_compute(2, 0)}));
  ASSERT_FALSE(rep.valid);
  EXPECT_EQ(rep.violation->rule, 'd');
  auto early = validate_schedule(g, {1, 1}, make(2, {make_send(0, 1, 0)}));
  EXPECT_EQ(early.violation->rule, 'd');
}

TEST(Validate, LeftoverTokensAreRuleE) {
  Graph g = path_graph(2);
  auto rep = validate_schedule(g, {1, 1}, make(1, {make_send(1, 1, 0)}));
  ASSERT_FALSE(rep.valid);
  EXPECT_EQ(rep.violation->rule, 'e');
  EXPECT_EQ(rep.final_token_count, 2);
}

TEST(Validate, EffectLandsOnlyAfterTheWindow) {
  // With tm = 2 the token reaches node 0 at the start of round 3.
  Graph g = path_graph(2);
  NetworkParams p{1, 2};
  EXPECT_FALSE(validate_schedule(g, p, make(3, {make_send(1, 1, 0), make_compute(2, 0)})).valid);
  EXPECT_TRUE(validate_schedule(g, p, make(3, {make_send(1, 1, 0), make_compute(3, 0)})).valid);
}

TEST(Validate, MalformedActionsAreInputErrors) {
  Graph g = path_graph(3);
  EXPECT_THROW(validate_schedule(g, {1, 1}, make(3, {make_send(1, 0, 2)})), InputError);
  EXPECT_THROW(validate_schedule(g, {1, 1}, make(3, {make_send(1, 5, 1)})), InputError);
  EXPECT_THROW(validate_schedule(g, {1, 1}, make(3, {make_send(1, 1, 1)})), InputError);
}

TEST(Validate, ManyReceiptsInOneRound) {
  Graph g = star_graph(5);
  std::vector<Action> acts;
  for (int v = 1; v < 5; ++v) acts.push_back(make_send(1, v, 0));
  for (int r = 2; r <= 5; ++r) acts.push_back(make_compute(r, 0));
  EXPECT_TRUE(validate_schedule(g, {1, 1}, make(5, acts)).valid);
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

TEST(Simulate, EdgeEndsWithMergedToken) {
  Graph g = path_graph(2);
  auto trace = simulate(g, {1, 1}, make(2, {make_send(1, 1, 0), make_compute(2, 0)}));
  ASSERT_EQ(trace.size(), 3u);
  EXPECT_EQ(trace.back().held[0], (std::vector<Token>{{0, 1}}));
  EXPECT_TRUE(trace.back().held[1].empty());
}

TEST(Simulate, PathOfThree) {
  Graph g = path_graph(3);
  auto s = make(3, {make_send(1, 0, 1), make_send(1, 2, 1), make_compute(2, 1),
                    make_compute(3, 1)});
  auto trace = simulate(g, {1, 1}, s);
  EXPECT_EQ(trace.back().held[1], (std::vector<Token>{{0, 1, 2}}));
  EXPECT_EQ(trace, simulate(g, {1, 1}, s));
}

TEST(Simulate, InTransitTokenStaysAtSender) {
  Graph g = path_graph(2);
  auto trace = simulate(g, {1, 3}, make(4, {make_send(1, 1, 0), make_compute(4, 0)}));
  EXPECT_EQ(trace[1].count_at(1), 1);  // start of round 2
  EXPECT_EQ(trace[3].count_at(0), 2);  // start of round 4
  EXPECT_EQ(trace[3].count_at(1), 0);
}

TEST(Simulate, NamedTokenIsTheOneSent) {
  Graph g = path_graph(3);
  // Node 1 holds {1} then receives {0}; it forwards {0} by name.
  Action fwd = make_send(2, 1, 2);
  fwd.token = 0;
  auto s = make(2, {make_send(1, 0, 1), fwd});
  auto res = replay(g, {1, 1}, s, initial_state(3));
  ASSERT_FALSE(res.violation);
  EXPECT_EQ(res.final_state.held[2], (std::vector<Token>{{2}, {0}}));
  EXPECT_EQ(res.final_state.held[1], (std::vector<Token>{{1}}));
}

TEST(Simulate, UnnamedSendPicksOldestToken) {
  Graph g = path_graph(3);
  auto s = make(3, {make_send(1, 0, 1), make_send(2, 1, 2)});
  auto res = replay(g, {1, 1}, s, initial_state(3));
  ASSERT_FALSE(res.violation);
  EXPECT_EQ(res.final_state.held[1], (std::vector<Token>{{0}}));
  EXPECT_EQ(res.final_state.held[2], (std::vector<Token>{{2}, {1}}));
}

TEST(Simulate, RejectsInvalidSchedules) {
  Graph g = path_graph(2);
  EXPECT_THROW(simulate(g, {1, 1}, make(2, {make_compute(1, 0)})), ScheduleError);
}

TEST(Simulate, ConservesSingletonsOnRandomSchedules) {
  // Random legal schedules built round by round; every boundary partitions V.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    Graph g = random_connected_graph(7, 0.4, seed);
    NetworkParams p{1 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(3))};
    std::vector<int> count(g.n(), 1);
    std::vector<int> busy(g.n(), 0);
    std::vector<std::vector<std::pair<int, int>>> arrive(200);
    Schedule s;
    for (int r = 1; r <= 40; ++r) {
      for (auto [v, c] : arrive[r]) count[v] += c;
      for (int v = 0; v < g.n(); ++v) {
        if (busy[v] >= r || rng.below(3) == 0) continue;
        if (count[v] >= 2 && rng.bernoulli(0.5)) {
          s.actions.push_back(make_compute(r, v));
          count[v] -= 2;
          busy[v] = r + p.tc - 1;
          arrive[r + p.tc].push_back({v, 1});
        } else if (count[v] >= 1) {
          const auto& nb = g.neighbors(v);
          const int u = nb[rng.below(nb.size())];
          s.actions.push_back(make_send(r, v, u));
          count[v] -= 1;
          busy[v] = r + p.tm - 1;
          arrive[r + p.tm].push_back({u, 1});
        }
      }
    }
    s.length = last_occupied_round(s, p);
    auto trace = simulate(g, p, s);
    int computes_done = 0;
    for (std::size_t b = 0; b < trace.size(); ++b) {
      std::vector<int> seen;
      for (const auto& tokens : trace[b].held) {
        for (const auto& t : tokens) seen.insert(seen.end(), t.begin(), t.end());
      }
      std::sort(seen.begin(), seen.end());
      std::vector<int> all(g.n());
      std::iota(all.begin(), all.end(), 0);
      EXPECT_EQ(seen, all);
      computes_done = 0;
      for (const auto& a : s.actions) {
        if (a.kind == ActionKind::Compute && a.round + p.tc <= static_cast<int>(b) + 1) {
          ++computes_done;
        }
      }
      EXPECT_EQ(trace[b].token_count(), g.n() - computes_done);
    }
    auto rep = validate_schedule(g, p, s);
    EXPECT_EQ(rep.valid, trace.back().token_count() == 1);
  }
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

TEST(Bounds, LowerBoundExamples) {
  auto k7 = lower_bounds(complete_graph(7), {1, 1});
  EXPECT_EQ(k7.compute_lb, 3);
  EXPECT_EQ(k7.radius_lb, 1);
  EXPECT_EQ(k7.combined_lb, 3);
  auto p3 = lower_bounds(path_graph(3), {1, 5});
  EXPECT_EQ(p3.compute_lb, 2);
  EXPECT_EQ(p3.radius_lb, 5);
  EXPECT_EQ(p3.combined_lb, 5);
  auto one = lower_bounds(Graph(1), {2, 3});
  EXPECT_EQ(one.combined_lb, 0);
  EXPECT_THROW(lower_bounds(Graph(3), {1, 1}), UnsolvableError);
}

TEST(Bounds, TrivialUpperBoundExamples) {
  EXPECT_EQ(trivial_upper_bound(complete_graph(4), {1, 1}), 6);
  EXPECT_EQ(trivial_upper_bound(Graph(1), {1, 1}), 0);
  EXPECT_EQ(trivial_upper_bound(path_graph(3), {2, 1}), 8);
}

TEST(Bounds, CeilLog2) {
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(2), 1);
  EXPECT_EQ(ceil_log2(3), 2);
  EXPECT_EQ(ceil_log2(1024), 10);
  EXPECT_EQ(ceil_log2(1025), 11);
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

TEST(Io, GraphRoundTrip) {
  std::istringstream in("# a triangle\n3 3\n0 1\n0 2\n1 2\n");
  Graph g = read_graph(in);
  EXPECT_EQ(g, complete_graph(3));
  std::ostringstream out;
  write_graph(out, g);
  EXPECT_EQ(out.str(), "3 3\n0 1\n0 2\n1 2\n");
}

TEST(Io, GraphRejectsBadInput) {
  for (const char* text : {"3 1\n1 0\n", "3 2\n0 1\n", "3 1\n0 1 2\n", "x 1\n",
                           "2 1\n0 1\n0 1\n", "2 1\n0 2\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_graph(in), InputError) << text;
  }
}

TEST(Io, ScheduleRoundTrip) {
  Schedule s = make(5, {make_compute(4, 1), make_send(1, 0, 1), make_compute(2, 1)});
  s.actions[1].token = 0;
  std::string text = schedule_to_string(s);
  EXPECT_EQ(text, "TCSCHED 1\nlength 5\n1 0 SEND 1 token=0\n2 1 COMPUTE\n4 1 COMPUTE\n");
  std::istringstream in(text);
  Schedule back = read_schedule(in);
  s.sort_actions();
  EXPECT_EQ(back, s);
}

TEST(Io, ScheduleRejectsUnknownFields) {
  for (const char* text :
       {"TCSCHED 2\nlength 1\n", "TCSCHED 1\nlength 2\n1 0 COMPUTE extra\n",
        "TCSCHED 1\nlength 2\n1 0 SEND 1 tok=0\n", "TCSCHED 1\nlength 2\n1 0 JUMP\n",
        "TCSCHED 1\n1 0 COMPUTE\n", "TCSCHED 1\nlength 2\n1 0 SEND 1 token=0 x\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_schedule(in), InputError) << text;
  }
}

}  // namespace
}  // namespace tokensched
