#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tokensched/graph.hpp"
#include "tokensched/params.hpp"
#include "tokensched/paths.hpp"
#include "tokensched/schedule.hpp"

namespace tokensched::brute {

struct BruteOptions {
  // Largest schedule length tried; defaults to the trivial upper bound.
  std::optional<int> limit;
  // Size guard, applied when enforce_guard is set.
  int max_nodes = 5;
  int max_cost = 3;
  bool enforce_guard = true;
  // Distinct states remembered before the search gives up.
  std::size_t max_states = 20'000'000;
};

struct OracleResult {
  int opt_length = 0;
  Schedule schedule;
  // Most sends made by tokens containing any one singleton.
  int max_singleton_distance = 0;
};

// Exact minimum-length schedule by iterative deepening over per-round action
// sets. Tokens are tracked by count only, and node states are canonicalized
// under twin symmetry. Throws SearchError on guard refusal, on an exhausted
// state budget, or when nothing fits within the limit.
OracleResult brute_opt(const Graph& g, const NetworkParams& p,
                       const BruteOptions& opts = {});

int max_singleton_distance(const Graph& g, const NetworkParams& p, const Schedule& s);

struct NStarEntry {
  int R = 0;
  long long n_star = 0;     // largest n with OPT(K_n) <= R
  long long tree_size = 0;  // |T(R)| for comparison
};

struct NStarTable {
  std::vector<NStarEntry> entries;
  bool truncated = false;
  std::string warning;
};

// N*(R) for R = 0..r_max from oracle runs on complete graphs with at most
// max_nodes nodes; rows that would need a larger clique are cut off.
NStarTable n_star_table(int r_max, const NetworkParams& p, int max_nodes = 7);

// Pairs W-vertices through the first merge of two tokens that each hold an
// odd number of W-singletons, and returns one path per vertex: its token's
// trace to the merge point followed by the partner's trace reversed. An odd
// |W| drops its highest id. Throws ScheduleError if s is invalid and
// std::logic_error if the pending-token bookkeeping or the congestion bound
// 2 * |s| / min(tc, tm) fails.
DirectedPathSet extract_opt_paths(const Graph& g, const NetworkParams& p,
                                  const Schedule& s, std::vector<int> W);

}  // namespace tokensched::brute
