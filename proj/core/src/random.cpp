#include "tt/random.hpp"

namespace tt {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed)
    : seed_(seed), engine_(splitmix64(seed)) {}

RandomStream RandomStream::child(std::uint64_t index) const {
  return RandomStream(splitmix64(seed_ + 0x9E3779B97F4A7C15ULL * (index + 1)));
}

double RandomStream::uniform01() {
  for (;;) {
    // 53 random bits into [0, 1); reject 0 so callers may take logs.
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) return 0;
  // Classic rejection to kill modulo bias.
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

}  // namespace tt
