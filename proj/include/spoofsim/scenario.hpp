#pragma once

#include <optional>

namespace spoofsim {

inline constexpr double kHbar = 1.054571817e-34;         // J s
inline constexpr double kSpeedOfLight = 299792458.0;     // m/s

/// Physical parameters of one radar engagement. SI units throughout.
struct RadarScenario {
  double range_m = 0.0;           // one-way range to the target
  double area_rx_m2 = 0.0;        // effective antenna area
  double cross_section_m2 = 0.0;  // target radar cross section
  double center_freq_hz = 0.0;    // pulse center frequency
  double n_t_prime = 0.0;         // fixed mean thermal photon number
  double pulse_width_s = 0.0;
  double avg_power_w = 0.0;
  int bits_receiver = 0;          // ADC resolution at the friendly receiver
  int bits_spoofer = 0;           // ADC resolution at the adversary
  double prf_hz = 0.0;            // pulse repetition frequency

  /// Throws std::invalid_argument on nonpositive fields or bits < 1.
  void validate() const;
};

/// The W-band reference engagement used by the shipped default config:
/// 1 m^2 antenna, 0.01 m^2 cross section, 100 GHz, 32 thermal photons
/// (150 K), 1 us / 10 kW pulses, 10-bit converters, 500 kHz PRF, 1 km.
RadarScenario wband_default_scenario();

/// Round-trip power transmissivity of the transmit -> target -> receive
/// path; scales as range^-4. Throws out_of_model_error when the result
/// would reach 1 (range too short for this model).
double transmissivity(const RadarScenario& sc);

/// Additive noise variance (photon-number units) of an n-bit quantizer for
/// a signal that reached the converter through a path of transmissivity
/// path_tau. The friendly receiver uses the full round-trip transmissivity;
/// the adversary, having intercepted at the halfway point, uses its square
/// root.
double quantization_variance(double path_tau, int bits,
                             const RadarScenario& sc);

/// Sufficient statistics of the decision problem: the two effective noise
/// photon numbers plus the shared displacement scale and link diagnostics.
struct HypothesisPair {
  double n0 = 0.0;        // noise photons under a true echo
  double n1 = 0.0;        // noise photons under a spoof
  double sqrt_tau = 0.0;  // scale applied to the transmitted amplitude
  double tau = 0.0;
  double xi = 0.0;        // receiver quantization variance
  double xi_prime = 0.0;  // adversary quantization variance

  /// Environment thermal occupation implied by n0 and xi.
  double thermal_occupation() const { return n0 - 0.5 * xi; }

  /// Bare pair for toy problems and synthetic tests; carries no link
  /// diagnostics (tau = 0, so only outcome-level sampling applies).
  static HypothesisPair synthetic(double n0, double n1);
};

/// Derives (N0, N1, ...) from the scenario:
///   N0 = N'_T + xi/2,   N1 = N0 + sqrt(tau) (1 + xi'/2).
HypothesisPair hypothesis_noise_numbers(const RadarScenario& sc);

/// Same, with explicit converter resolutions. std::nullopt means an ideal
/// (infinite-resolution) converter on that side: the corresponding
/// quantization variance is 0.
HypothesisPair hypothesis_noise_numbers(const RadarScenario& sc,
                                        std::optional<int> bits_receiver,
                                        std::optional<int> bits_spoofer);

/// Width parameter of the transmitted amplitude prior
/// P(a) = (lambda/pi) exp(-lambda |a|^2), calibrated so the average pulse
/// energy equals (2 lambda)^-1 photons: lambda = hbar w0 / (2 T P_ave).
double amplitude_prior_lambda(const RadarScenario& sc);

} // namespace spoofsim
