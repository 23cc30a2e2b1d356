#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace persuade {

/// Counter-style splittable generator (splitmix64).  Small state, seedable,
/// and cheap to fork into independent per-trial substreams, which keeps
/// aggregate statistics identical under any trial scheduling.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 significant bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; safe under log().
  double uniform_pos() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Geometric on {1, 2, ...} with success probability x per trial.
  std::uint64_t geometric(double x) {
    if (x >= 1.0) return 1;
    const double u = uniform_pos();
    return 1 + static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-x)));
  }

  /// Index sampled from cumulative weights (last entry ~ 1).
  std::size_t from_cumulative(const std::vector<double>& cum) {
    const double u = uniform01();
    std::size_t lo = 0, hi = cum.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cum[mid] > u) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  }

 private:
  std::uint64_t state_;
};

/// Decorrelated seed for a trial substream.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
  return g.next();
}

}  // namespace persuade
