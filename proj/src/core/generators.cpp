#include "tokensched/generators.hpp"

#include <string>

#include "tokensched/errors.hpp"
#include "tokensched/rng.hpp"

namespace tokensched {

Graph random_connected_graph(int n, double p, std::uint64_t seed,
                             int max_attempts) {
  if (n < 1) throw InputError("random graph needs n >= 1");
  if (p < 0.0 || p > 1.0) throw InputError("edge probability must lie in [0, 1]");
  Rng rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Graph g(n);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.bernoulli(p)) g.add_edge(u, v);
      }
    }
    if (is_connected(g)) return g;
  }
  throw InputError("no connected G(" + std::to_string(n) + ", p) sample in " +
                   std::to_string(max_attempts) + " attempts");
}

}  // namespace tokensched
