#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <utility>

namespace spoofsim {

/// Mixes (master seed, stream index) into a decorrelated child seed using the
/// splitmix64 finalizer. Every Monte Carlo trial derives its own stream from
/// its index, so results are independent of scheduling order and thread count.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index);

/// Seeded PRNG used throughout the simulation layer.
///
/// The raw engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Normal variates are produced with an explicit Box-Muller
/// transform instead of std::normal_distribution, whose draw sequence is
/// implementation-defined. A fixed seed therefore reproduces the same draws
/// on any conforming stdlib.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Child stream for one trial of a campaign.
  static Rng stream(std::uint64_t master, std::uint64_t index) {
    return Rng(derive_stream_seed(master, index));
  }

  /// Uniform double in (0, 1]. The open lower end keeps log(u) finite.
  double uniform() {
    const std::uint64_t bits = engine_() >> 11; // top 53 bits
    return static_cast<double>(bits + 1) * 0x1.0p-53;
  }

  /// Pair of independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

  /// Circularly symmetric complex Gaussian with the given mean and the given
  /// variance in each quadrature (total complex variance = twice that).
  std::complex<double> complex_normal(std::complex<double> mean,
                                      double var_per_quadrature) {
    const double sigma = std::sqrt(var_per_quadrature);
    const auto [z0, z1] = normal_pair();
    return mean + std::complex<double>(sigma * z0, sigma * z1);
  }

private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
};

} // namespace spoofsim
