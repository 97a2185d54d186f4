#include "tokensched/bounds.hpp"

#include <algorithm>

namespace tokensched {

int ceil_log2(long long n) {
  int k = 0;
  while ((1LL << k) < n) ++k;
  return k;
}

LowerBounds lower_bounds(const Graph& g, const NetworkParams& p) {
  LowerBounds lb;
  lb.radius_lb = p.tm * radius(g);
  lb.compute_lb = p.tc * ceil_log2(g.n());
  lb.combined_lb = std::max(lb.compute_lb, lb.radius_lb);
  return lb;
}

long long trivial_upper_bound(const Graph& g, const NetworkParams& p) {
  const long long d = diameter(g);
  if (g.n() <= 1) return 0;
  return static_cast<long long>(g.n() - 1) * (p.tc + d * p.tm);
}

}  // namespace tokensched
