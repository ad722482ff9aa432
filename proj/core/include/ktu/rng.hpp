#ifndef KTU_RNG_HPP
#define KTU_RNG_HPP

#include <cstdint>

namespace ktu {

/// Deterministic, platform-independent generator: xoshiro-free splitmix64
/// core with hand-rolled uniform and Box-Muller normal draws. std::
/// distributions are implementation-defined, which would break the
/// bit-for-bit reproducibility contract of seeded runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01();

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform01_open_low();

  /// Uniform integer in [0, n), n >= 1.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal via Box-Muller (pairs cached).
  double normal();

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// Derives an independent child seed from (seed, index); used to split one
/// user seed into per-trial / per-retry streams so parallel evaluation
/// cannot change results.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace ktu

#endif
