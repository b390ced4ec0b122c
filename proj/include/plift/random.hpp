#pragma once

#include <cstdint>
#include <random>

#include "plift/rational.hpp"

namespace plift {

// Seeded generator with a platform-independent bounded draw. The standard
// distributions are implementation-defined, so they are avoided to keep
// seeded runs byte-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  Rat uniform_rat(std::int64_t lo, std::int64_t hi) { return rat(uniform(lo, hi)); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Per-trial seed: trial t of a run seeded with s uses s + t.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) { return seed + index; }

}  // namespace plift
