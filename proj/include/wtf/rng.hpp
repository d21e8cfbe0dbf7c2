#pragma once

#include <cstdint>

namespace wtf {

/// Deterministic random generator (splitmix64 core).
///
/// Self-contained so that seeded experiments and frozen regression baselines
/// reproduce byte-for-byte regardless of standard-library version. Per-trial
/// streams are derived with fork(), which keeps aggregation independent of
/// any thread schedule.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % range);
  }

  bool flip() { return (next_u64() & 1) != 0; }

  /// Standard normal via Box-Muller.
  double normal();

  /// Derived stream for trial `n`; decorrelated from this generator.
  Rng fork(std::uint64_t n) const {
    Rng r(state_ ^ (0x9e3779b97f4a7c15ULL * (n + 0x100001b3ULL)));
    r.next_u64();
    return r;
  }

 private:
  std::uint64_t state_;
};

}  // namespace wtf
