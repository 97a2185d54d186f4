#pragma once

#include "tokensched/graph.hpp"
#include "tokensched/params.hpp"

namespace tokensched {

// Smallest k with 2^k >= n (0 for n <= 1).
int ceil_log2(long long n);

struct LowerBounds {
  int compute_lb = 0;
  int radius_lb = 0;
  int combined_lb = 0;
};

// compute_lb = tc * ceil(log2 n), radius_lb = tm * radius.
LowerBounds lower_bounds(const Graph& g, const NetworkParams& p);

// (n-1) * (tc + D * tm): gather everything pairwise along diameter paths.
long long trivial_upper_bound(const Graph& g, const NetworkParams& p);

}  // namespace tokensched
