#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace normlab {

/// mt19937_64 with an explicit Box-Muller transform, so coefficient draws
/// are bit-identical across standard library implementations.
class SeededGaussian {
 public:
  explicit SeededGaussian(std::uint64_t seed) : eng_(seed) {}

  /// Independent stream for restart `stream` of a run seeded with `seed`.
  SeededGaussian(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    eng_.seed(seq);
  }

  /// Uniform on the open interval (0, 1).
  double uniform01() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

  /// Complex Gaussian: independent N(0,1) real and imaginary parts.
  std::complex<double> gaussian() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::mt19937_64 eng_;
};

}
