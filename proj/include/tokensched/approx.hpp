#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tokensched/flow_lp.hpp"
#include "tokensched/graph.hpp"
#include "tokensched/params.hpp"
#include "tokensched/paths.hpp"
#include "tokensched/replay.hpp"
#include "tokensched/schedule.hpp"

namespace tokensched::approx {

// Constants standing in for the unspecified O(log n) factors.
struct ApproxConstants {
  static constexpr double kSampleLogFactor = 4.0;      // samples: ceil(4 log2 n) + 1
  static constexpr double kCongestionFactor = 10.0;    // keep: con <= 10 z log2 L
  static constexpr int kWalkRetries = 100;
  static constexpr double kDeadEndFlow = 1e-9;
  static constexpr int kRouteAttempts = 20;
  static constexpr int kRouteSlack = 8;                // 8 (con + dil) ceil(log2(n + 2))
  static constexpr int kIterationLogFactor = 24;       // cap: 24 ceil(log2 n) + 8
  static constexpr int kIterationBase = 8;
  static constexpr int kFallbackMaxW = 12;
};

struct SampledPaths {
  // Kept paths of the best sample, each from some w to another W node.
  std::vector<VertexPath> paths;
  int sample_count = 0;
  int best_sample = 0;
  int walks_in_best = 0;  // paths in the best sample before filtering
  double threshold = 0.0;
  std::vector<int> kept_per_sample;
};

int sample_count(int n);

// Random walks on each commodity's flow, picking arcs in proportion to flow
// and stopping at the first W node. Loops are cut out of every walk. Keeps
// the sample with the most paths whose vertex congestion within the sample
// stays at most 10 z log2(max(L_hat, 2)), and returns those paths.
SampledPaths sample_paths(const FlowSolution& flow, int L_hat, const std::vector<int>& W,
                          std::uint64_t seed);

// Directs sampled paths so that sources and sinks are distinct W nodes.
// Hubs of the graph w -> endpoint(P_w) with in-degree >= 2 are handled
// first, deepest in-trees before cycles: an odd in-neighbor (highest id)
// loses its arc, the rest pair up in id order into P_w1 + reverse(P_w2)
// with loops cut, and hub plus pair leave the graph. The leftover paths and
// cycles contribute every other arc.
DirectedPathSet assign_paths(const std::vector<VertexPath>& paths, const std::vector<int>& W);

struct RouteResult {
  Schedule fragment;     // rounds start at 1
  int makespan = 0;      // rounds until the last packet lands
  int attempts = 0;
  std::vector<int> delays;
};

// Store-and-forward packet routing in steps of tm rounds. Each node forwards
// at most one packet per step, taking its queue in FIFO order, and every
// packet waits a uniform random delay in [0, con) at its source. Retries
// with fresh delays while the makespan exceeds 8 (con + dil) ceil(log2(n+2))
// steps and keeps the best attempt. Sends are unnamed.
RouteResult opt_route(const Graph& g, const NetworkParams& p, const DirectedPathSet& dp,
                      std::uint64_t seed);

// Same routing with every delay fixed to zero.
RouteResult route_without_delays(const Graph& g, const NetworkParams& p,
                                 const DirectedPathSet& dp);

// Routing followed by one COMPUTE at every sink.
Schedule route_paths_m(const Graph& g, const NetworkParams& p, const DirectedPathSet& dp,
                       std::uint64_t seed);

// Forwarding with a sleep rule: a node holding exactly one token forwards
// the path token it carries; a node that ever holds two or more sleeps (sinks
// start asleep). Runs at most 2 dil steps, stopping once nothing can move,
// then every node merges its pile down to one token. `token_counts` gives
// the tokens held per node at the start; the short form assumes one token at
// every path endpoint and none elsewhere.
Schedule route_paths_c(const Graph& g, const NetworkParams& p, const DirectedPathSet& dp,
                       const std::vector<int>& token_counts);
Schedule route_paths_c(const Graph& g, const NetworkParams& p, const DirectedPathSet& dp);

struct IterationReport {
  int iter = 0;
  int W = 0;
  int L = 0;
  double z = 0.0;
  int con = 0;
  int dil = 0;
  int U = 0;
  int fragment_rounds = 0;
  std::string router;  // "m", "c" or "fallback"
};

struct SolveResult {
  Schedule schedule;
  std::vector<IterationReport> iterations;
};

// Nearest-pair matching on W: each unmatched node in id order pairs with the
// closest unmatched node (smallest id on ties) along a shortest path.
DirectedPathSet fallback_pairs(const Graph& g, const std::vector<int>& W);

// Repeats path selection and routing until one token remains. Throws
// UnsolvableError on a disconnected graph.
SolveResult solve_tc(const Graph& g, const NetworkParams& p, std::uint64_t seed);

// CSV with `#` comment lines for the constants, then the header
// iter,W,L,z,con,dil,U,fragment_rounds,router.
std::string report_csv(const SolveResult& result, std::uint64_t seed);

}  // namespace tokensched::approx
