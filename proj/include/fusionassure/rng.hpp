#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fa {

/// Deterministic random stream. mt19937_64's output sequence is fixed by the
/// C++ standard; bounded integers and doubles are derived here rather than with
/// <random> distributions, whose algorithms are implementation-defined.
class RngStream {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+splitmix64/v1";

  explicit RngStream(std::uint64_t seed);

  /// Independent substream for trial `index` of a run seeded with `seed`.
  static RngStream for_trial(std::uint64_t seed, std::uint64_t index);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// True with probability p; p <= 0 never, p >= 1 always.
  bool bernoulli(double p);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace fa
