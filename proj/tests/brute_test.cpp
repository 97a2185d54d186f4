#include <gtest/gtest.h>

#include "tokensched/bounds.hpp"
#include "tokensched/brute.hpp"
#include "tokensched/errors.hpp"
#include "tokensched/graph.hpp"
#include "tokensched/optcomplete.hpp"
#include "tokensched/replay.hpp"

namespace tokensched::brute {
namespace {

TEST(BruteOpt, FrozenOptima) {
  EXPECT_EQ(brute_opt(complete_graph(2), {1, 1}).opt_length, 2);
  EXPECT_EQ(brute_opt(complete_graph(3), {1, 1}).opt_length, 3);
  EXPECT_EQ(brute_opt(path_graph(3), {1, 1}).opt_length, 3);
  EXPECT_EQ(brute_opt(complete_graph(2), {3, 2}).opt_length, 5);
  EXPECT_EQ(brute_opt(Graph(1), {2, 2}).opt_length, 0);
}

TEST(BruteOpt, ScheduleValidatesAndSitsBetweenBounds) {
  const std::vector<Graph> graphs = {complete_graph(4), path_graph(4), star_graph(4),
                                     cycle_graph(5), path_graph(5)};
  for (const auto& g : graphs) {
    for (NetworkParams p : {NetworkParams{1, 1}, NetworkParams{2, 1}, NetworkParams{1, 2}}) {
      auto res = brute_opt(g, p);
      EXPECT_EQ(res.schedule.length, res.opt_length);
      EXPECT_TRUE(validate_schedule(g, p, res.schedule).valid);
      EXPECT_GE(res.opt_length, lower_bounds(g, p).combined_lb);
      EXPECT_LE(res.opt_length, trivial_upper_bound(g, p));
    }
  }
}

TEST(BruteOpt, MatchesOptCompleteOnCliques) {
  for (NetworkParams p : {NetworkParams{1, 1}, NetworkParams{2, 1}, NetworkParams{1, 2}}) {
    for (int n = 2; n <= 5; ++n) {
      EXPECT_EQ(brute_opt(complete_graph(n), p).opt_length, complete::r_star(n, p));
    }
  }
}

TEST(BruteOpt, IsDeterministic) {
  auto a = brute_opt(path_graph(4), {1, 2});
  auto b = brute_opt(path_graph(4), {1, 2});
  EXPECT_EQ(a.schedule, b.schedule);
  EXPECT_EQ(a.max_singleton_distance, b.max_singleton_distance);
}

TEST(BruteOpt, GuardAndLimit) {
  EXPECT_THROW(brute_opt(complete_graph(6), {1, 1}), SearchError);
  EXPECT_THROW(brute_opt(complete_graph(3), {4, 1}), SearchError);
  BruteOptions tight;
  tight.limit = 2;
  EXPECT_THROW(brute_opt(complete_graph(3), {1, 1}, tight), NoScheduleWithinLimit);
  BruteOptions open;
  open.enforce_guard = false;
  EXPECT_EQ(brute_opt(complete_graph(6), {1, 1}, open).opt_length, 5);
}

TEST(BruteOpt, StarGadgetNeedsTwoTmPlusTwo) {
  // Hub with three leaves at unit costs: leaves must funnel through the hub.
  EXPECT_EQ(brute_opt(star_graph(4), {1, 1}).opt_length, 4);
}

TEST(BruteOpt, SingletonDistance) {
  auto res = brute_opt(path_graph(3), {1, 1});
  EXPECT_EQ(res.max_singleton_distance, 1);
  auto p5 = brute_opt(path_graph(5), {1, 1});
  EXPECT_GE(p5.max_singleton_distance, 2);
}

TEST(NStar, UnitCosts) {
  auto table = n_star_table(5, {1, 1});
  ASSERT_GE(table.entries.size(), 5u);
  std::vector<std::pair<int, long long>> want = {{0, 1}, {1, 1}, {2, 2}, {3, 3}, {4, 5}};
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(table.entries[i].R, want[i].first);
    EXPECT_EQ(table.entries[i].n_star, want[i].second);
  }
  for (const auto& e : table.entries) EXPECT_EQ(e.n_star, e.tree_size);
}

TEST(NStar, SlowCompute) {
  auto table = n_star_table(6, {2, 1});
  ASSERT_GE(table.entries.size(), 6u);
  EXPECT_EQ(table.entries[3].n_star, 2);
  EXPECT_EQ(table.entries[4].n_star, 2);
  EXPECT_EQ(table.entries[5].n_star, 3);
  for (int R = 0; R < 3; ++R) EXPECT_EQ(table.entries[R].n_star, 1);
  for (const auto& e : table.entries) EXPECT_EQ(e.n_star, e.tree_size);
}

TEST(NStar, TruncatesPastTheNodeCap) {
  auto table = n_star_table(10, {1, 1}, 4);
  EXPECT_TRUE(table.truncated);
  EXPECT_FALSE(table.warning.empty());
  EXPECT_EQ(table.entries.back().n_star, 3);
}

TEST(OptPaths, EdgePairsBothEnds) {
  auto res = brute_opt(complete_graph(2), {1, 1});
  auto dp = extract_opt_paths(complete_graph(2), {1, 1}, res.schedule, {0, 1});
  ASSERT_EQ(dp.size(), 2);
  EXPECT_EQ(congestion(dp.paths, 2), 2);
  for (const auto& p : dp.paths) {
    EXPECT_EQ(p.size(), 2u);
    EXPECT_NE(p.front(), p.back());
  }
}

TEST(OptPaths, OddSetDropsHighestId) {
  Graph g = path_graph(3);
  auto res = brute_opt(g, {1, 1});
  auto dp = extract_opt_paths(g, {1, 1}, res.schedule, {0, 1, 2});
  ASSERT_EQ(dp.size(), 2);
  for (const auto& p : dp.paths) {
    EXPECT_NE(p.front(), 2);
    EXPECT_NE(p.back(), 2);
    EXPECT_NE(p.front(), p.back());
  }
}

TEST(OptPaths, EndpointsPairUpOnOracleSchedules) {
  const std::vector<Graph> graphs = {complete_graph(4), path_graph(4), star_graph(5),
                                     cycle_graph(5)};
  for (const auto& g : graphs) {
    for (NetworkParams p : {NetworkParams{1, 1}, NetworkParams{2, 1}, NetworkParams{1, 2}}) {
      auto res = brute_opt(g, p);
      std::vector<int> all(g.n());
      for (int v = 0; v < g.n(); ++v) all[v] = v;
      auto dp = extract_opt_paths(g, p, res.schedule, all);
      EXPECT_EQ(dp.size(), g.n() / 2 * 2);
      for (const auto& path : dp.paths) {
        EXPECT_NE(path.front(), path.back());
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          EXPECT_TRUE(g.has_edge(path[i], path[i + 1]));
        }
      }
      EXPECT_LE(congestion(dp.paths, g.n()) * p.min_cost(), 2 * res.opt_length);
    }
  }
}

TEST(OptPaths, RejectsInvalidSchedules) {
  Schedule bad;
  bad.length = 1;
  EXPECT_THROW(extract_opt_paths(complete_graph(2), {1, 1}, bad, {0, 1}), ScheduleError);
}

}  // namespace
}  // namespace tokensched::brute
