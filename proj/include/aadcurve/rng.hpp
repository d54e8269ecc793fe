// Seedable random number generation with deterministic stream splitting.
//
// All randomized operations in this library draw from xoshiro256++ streams
// derived from a user seed plus a list of integer ids (purpose tag, window
// index, resample index, ...). Two streams with different id lists are
// independent for practical purposes, and the mapping (seed, ids) -> stream
// does not depend on evaluation order, so concurrent or reordered consumers
// reproduce identical results.
//
// The derivation rule: fold each id into the running 64-bit state with one
// splitmix64 step, h = splitmix64(h ^ (id + 0x9E3779B97F4A7C15)); the final
// h seeds the xoshiro256++ state through four further splitmix64 steps.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>

namespace aadcurve {

// First id of every derived stream, keeping consumer id spaces disjoint
// even when user-facing seeds coincide.
namespace stream_family {
inline constexpr std::uint64_t kOracleWindow = 1;      // ground-truth windows
inline constexpr std::uint64_t kEstimationWindow = 2;  // labeled_set windows
inline constexpr std::uint64_t kBootstrapResample = 3;
inline constexpr std::uint64_t kSubsample = 4;
}  // namespace stream_family

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

std::uint64_t derive_stream_seed(std::uint64_t seed,
                                 std::span<const std::uint64_t> ids) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept;

  /// The stream for (seed, ids); see the derivation rule above.
  static Rng stream(std::uint64_t seed,
                    std::initializer_list<std::uint64_t> ids) noexcept;

  std::uint64_t next() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept;

  /// Uniform integer in [0, n), n >= 1. Fixed-point multiply; the residual
  /// bias of ~n/2^64 is irrelevant at the sample counts used here.
  std::uint64_t below(std::uint64_t n) noexcept;

  /// Standard normal deviate (Box-Muller; generated in pairs, the second
  /// value is cached).
  double gaussian() noexcept;

  void fill_gaussian(std::span<double> out) noexcept;

 private:
  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace aadcurve
