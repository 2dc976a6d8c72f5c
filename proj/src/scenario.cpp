#include "spoofsim/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spoofsim/errors.hpp"

namespace spoofsim {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw std::invalid_argument(std::string("scenario: ") + name +
                                " must be positive and finite");
  }
}
} // namespace

void RadarScenario::validate() const {
  require_positive(range_m, "range_m");
  require_positive(area_rx_m2, "area_rx_m2");
  require_positive(cross_section_m2, "cross_section_m2");
  require_positive(center_freq_hz, "center_freq_hz");
  require_positive(pulse_width_s, "pulse_width_s");
  require_positive(avg_power_w, "avg_power_w");
  require_positive(prf_hz, "prf_hz");
  if (!std::isfinite(n_t_prime) || n_t_prime < 0.0) {
    throw std::invalid_argument("scenario: n_t_prime must be >= 0");
  }
  if (bits_receiver < 1 || bits_spoofer < 1) {
    throw std::invalid_argument("scenario: bit resolutions must be >= 1");
  }
}

RadarScenario wband_default_scenario() {
  RadarScenario sc;
  sc.range_m = 1000.0;
  sc.area_rx_m2 = 1.0;
  sc.cross_section_m2 = 0.01;
  sc.center_freq_hz = 100e9;
  sc.n_t_prime = 32.0;
  sc.pulse_width_s = 1e-6;
  sc.avg_power_w = 10e3;
  sc.bits_receiver = 10;
  sc.bits_spoofer = 10;
  sc.prf_hz = 500e3;
  return sc;
}

double transmissivity(const RadarScenario& sc) {
  sc.validate();
  const double wavelength = kSpeedOfLight / sc.center_freq_hz;
  const double gain_tx = sc.area_rx_m2 / (wavelength * wavelength);
  const double spread = 4.0 * kPi * sc.range_m * sc.range_m;
  const double tau =
      (gain_tx / spread) * (sc.cross_section_m2 * sc.area_rx_m2 / spread);
  if (tau >= 1.0) {
    throw out_of_model_error(
        "transmissivity: tau >= 1 at range " + std::to_string(sc.range_m) +
        " m; the engagement is too close for this model");
  }
  return tau;
}

double quantization_variance(double path_tau, int bits,
                             const RadarScenario& sc) {
  if (!(path_tau > 0.0) || path_tau >= 1.0) {
    throw std::invalid_argument(
        "quantization_variance: path transmissivity must lie in (0, 1)");
  }
  if (bits < 1) {
    throw std::invalid_argument("quantization_variance: bits must be >= 1");
  }
  // Least significant bit spans 2^-n of the mean received photon number;
  // uniform rounding error contributes 1/12 of that span as variance.
  const double photons_per_pulse =
      sc.pulse_width_s * sc.avg_power_w / (kHbar * 2.0 * kPi * sc.center_freq_hz);
  return path_tau * std::ldexp(1.0, -bits) * photons_per_pulse / 12.0;
}

HypothesisPair HypothesisPair::synthetic(double n0, double n1) {
  if (!(n0 >= 0.0) || !(n1 >= n0)) {
    throw std::invalid_argument("HypothesisPair: need n1 >= n0 >= 0");
  }
  HypothesisPair pair;
  pair.n0 = n0;
  pair.n1 = n1;
  return pair;
}

HypothesisPair hypothesis_noise_numbers(const RadarScenario& sc) {
  return hypothesis_noise_numbers(sc, sc.bits_receiver, sc.bits_spoofer);
}

HypothesisPair hypothesis_noise_numbers(const RadarScenario& sc,
                                        std::optional<int> bits_receiver,
                                        std::optional<int> bits_spoofer) {
  HypothesisPair pair;
  pair.tau = transmissivity(sc);
  pair.sqrt_tau = std::sqrt(pair.tau);
  pair.xi = bits_receiver
                ? quantization_variance(pair.tau, *bits_receiver, sc)
                : 0.0;
  pair.xi_prime = bits_spoofer
                      ? quantization_variance(pair.sqrt_tau, *bits_spoofer, sc)
                      : 0.0;
  pair.n0 = sc.n_t_prime + 0.5 * pair.xi;
  pair.n1 = pair.n0 + pair.sqrt_tau * (1.0 + 0.5 * pair.xi_prime);
  return pair;
}

double amplitude_prior_lambda(const RadarScenario& sc) {
  sc.validate();
  const double pulse_energy = sc.pulse_width_s * sc.avg_power_w;
  return kHbar * 2.0 * kPi * sc.center_freq_hz / (2.0 * pulse_energy);
}

} // namespace spoofsim
