#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace sidechain {

/// Advances a splitmix64 state and returns the next output.
std::uint64_t splitmix64(std::uint64_t& state);

/// Mixes a base seed with a stream index (e.g. a trajectory id) into an
/// independent 64-bit seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// xoshiro256** seeded through splitmix64.
///
/// Satisfies UniformRandomBitGenerator. The floating-point helpers are
/// implemented here rather than through <random> distributions so that
/// streams are identical across standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  /// Standard normal via the polar Box-Muller method.
  double normal();
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  std::uint64_t seed() const { return seed_; }

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sidechain
