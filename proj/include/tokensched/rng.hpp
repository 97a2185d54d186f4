#pragma once

#include <cstdint>
#include <random>

namespace tokensched {

std::uint64_t splitmix64(std::uint64_t x);

// Seeded generator with deterministic child streams. Values are mapped from
// raw engine output by hand so they match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1).
  double uniform01();
  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double prob) { return uniform01() < prob; }

  // Independent stream keyed by (this seed, key).
  Rng child(std::uint64_t key) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace tokensched
