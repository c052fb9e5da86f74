#pragma once

#include <cstdint>
#include <random>

namespace tt {

std::uint64_t splitmix64(std::uint64_t x);

// Seedable random stream with deterministic splitting.
//
// Splitting rule: child(i) is seeded with
//   splitmix64(seed + 0x9E3779B97F4A7C15 * (i + 1))
// which depends only on (seed, i), never on how many values the parent has
// produced. Samplers derive one child stream per matrix draw (and the
// rejection sampler one child per attempt), so a run is replayable for any
// worker count: worker w simply handles its subset of draw indices.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  RandomStream child(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

  std::uint64_t bits64() { return engine_(); }

  // Uniform on the open interval (0, 1); never returns 0 so it is safe
  // under log().
  double uniform01();

  // Uniform integer in [0, bound), bound >= 1. Rejection from bits64, so
  // exactly uniform.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace tt
