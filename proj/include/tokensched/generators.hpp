#pragma once

#include <cstdint>

#include "tokensched/graph.hpp"

namespace tokensched {

// G(n, p) resampled until connected; throws InputError after max_attempts.
Graph random_connected_graph(int n, double p, std::uint64_t seed,
                             int max_attempts = 10000);

}  // namespace tokensched
