#pragma once

#include <cstdint>
#include <random>

namespace sops {

// 64-bit Mersenne Twister with explicit, portable conversions so that a
// seed reproduces the same trajectory on every standard library.
class Rng {
 public:
  static constexpr const char* kName = "std::mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, range), range > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t range) {
    std::uint64_t x = engine_();
    __uint128_t m = static_cast<__uint128_t>(x) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range) {
      const std::uint64_t threshold = (0 - range) % range;
      while (low < threshold) {
        x = engine_();
        m = static_cast<__uint128_t>(x) * range;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double strictly inside (0, 1).
  double open01() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sops
