#pragma once

#include <cmath>
#include <cstdint>

namespace swiptgame {

/// splitmix64 generator. The output sequence is a pure function of the seed,
/// with no global state, so runs replay bit-identically across builds.
/// substream(seed, k) derives an independent stream per (seed, k), which lets
/// Monte Carlo trial k see the same channel draws at every sweep point.
class SplitMix64 {
 public:
  static constexpr const char* kAlgorithmName = "splitmix64";

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe as a log argument.
  double next_open_closed() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Exponential draw by inversion: mean * (-ln U).
  double next_exponential(double mean) { return -mean * std::log(next_open_closed()); }

  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Log-uniform over [lo, hi], lo > 0.
  double next_log_uniform(double lo, double hi) {
    return lo * std::pow(hi / lo, next_double());
  }

  static SplitMix64 substream(std::uint64_t seed, std::uint64_t stream_id) {
    SplitMix64 mixer(seed + 0x9e3779b97f4a7c15ull * (stream_id + 1));
    return SplitMix64(mixer.next_u64());
  }

 private:
  std::uint64_t state_;
};

}  // namespace swiptgame
