#include "aadcurve/rng.hpp"

#include <cmath>
#include <numbers>

namespace aadcurve {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

constexpr std::uint64_t kIdTag = 0x9E3779B97F4A7C15ULL;

// One splitmix64 output for input v (stateless form).
inline std::uint64_t splitmix_once(std::uint64_t v) noexcept {
  return SplitMix64(v).next();
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t seed,
                                 std::span<const std::uint64_t> ids) noexcept {
  std::uint64_t h = seed;
  for (std::uint64_t id : ids) {
    h = splitmix_once(h ^ (id + kIdTag));
  }
  return h;
}

Rng::Rng(std::uint64_t seed) noexcept {
  SplitMix64 sm(seed);
  for (auto& word : s_) {
    word = sm.next();
  }
}

Rng Rng::stream(std::uint64_t seed,
                std::initializer_list<std::uint64_t> ids) noexcept {
  return Rng(derive_stream_seed(seed, {ids.begin(), ids.size()}));
}

std::uint64_t Rng::next() noexcept {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform01() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) noexcept {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next()) * n) >> 64);
}

double Rng::gaussian() noexcept {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // 1 - uniform01() lies in (0, 1], keeping the log argument nonzero.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

void Rng::fill_gaussian(std::span<double> out) noexcept {
  for (double& v : out) {
    v = gaussian();
  }
}

}  // namespace aadcurve
