#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace relay {

// Stream scheme (stable; changing it changes every published CSV):
//
//   key   = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index)
//   state = four successive splitmix64 outputs starting from key
//   bits  = xoshiro256** over state
//
// Every Monte Carlo sample owns the stream (seed, stream, index), so a draw is a
// pure function of those three numbers and never of the thread that ran it.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
    std::uint64_t key = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
    for (auto& word : state_) {
      key = splitmix64(key);
      word = key;
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on (0, 1], 53-bit resolution.
  double uniform_open() noexcept {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  // Circularly symmetric CN(0, 1): each part has variance 1/2 (Box-Muller).
  std::complex<double> complex_gaussian() noexcept {
    const double radius = std::sqrt(-std::log(uniform_open()));
    const double angle = 2.0 * std::numbers::pi * uniform_open();
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

namespace streams {

enum class Purpose : std::uint64_t {
  Moments = 1,
  MonteCarlo = 2,
  Distribution = 3,
  Validation = 4,
};

// Stream id = purpose in the high 32 bits, hop index (0-based) in the low bits.
constexpr std::uint64_t id(Purpose purpose, std::uint64_t hop) noexcept {
  return (static_cast<std::uint64_t>(purpose) << 32) | hop;
}

}  // namespace streams

}  // namespace relay
