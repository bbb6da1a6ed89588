#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace qtherm {

// One round of the splitmix64 output function.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Per-sample seed derivation. Campaigns draw sample i from
// mix_seed(master, i), so results do not depend on scheduling order.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index * 0x9E3779B97F4A7C15ull + 1));
}

// xoshiro256++ (Blackman & Vigna), seeded through splitmix64. Fully
// specified arithmetic, so streams are identical across platforms.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t z = seed;
    for (auto& word : state_) {
      z = splitmix64(z);
      word = z;
    }
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1), 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]; never returns 0, safe as a log() argument.
  double uniform01_positive() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on the open interval (-1,1).
  double uniform_symmetric() {
    for (;;) {
      const double v = 2.0 * uniform01() - 1.0;
      if (v != -1.0) return v;
    }
  }

  // Box-Muller transform: two independent standard normal deviates.
  std::pair<double, double> gaussian_pair() {
    const double u1 = uniform01_positive();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    auto [a, b] = gaussian_pair();
    spare_ = b;
    have_spare_ = true;
    return a;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace qtherm
