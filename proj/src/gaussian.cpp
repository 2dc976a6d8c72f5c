#include "spoofsim/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace spoofsim {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool finite(double v) { return std::isfinite(v); }
} // namespace

double Sym2::min_eigenvalue() const {
  const double tr = xx + yy;
  const double det = xx * yy - xy * xy;
  const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
  return 0.5 * tr - disc;
}

double Sym2::max_eigenvalue() const {
  const double tr = xx + yy;
  const double det = xx * yy - xy * xy;
  const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
  return 0.5 * tr + disc;
}

bool Sym2::isotropic(double rtol) const {
  const double scale = std::max(std::abs(xx), std::abs(yy));
  return std::abs(xx - yy) <= rtol * scale && std::abs(xy) <= rtol * scale;
}

GaussianState coherent_state(complexd alpha) {
  if (!finite(alpha.real()) || !finite(alpha.imag())) {
    throw std::invalid_argument("coherent_state: non-finite amplitude");
  }
  GaussianState s;
  s.displacement = {2.0 * alpha.real(), 2.0 * alpha.imag()};
  s.covariance = {1.0, 0.0, 1.0};
  return s;
}

void LossyChannelParams::validate() const {
  if (!finite(tau) || tau <= 0.0 || tau > 1.0) {
    throw std::invalid_argument("lossy channel: tau must lie in (0, 1]");
  }
  if (!finite(n_t_prime) || n_t_prime < 0.0) {
    throw std::invalid_argument("lossy channel: n_t_prime must be >= 0");
  }
  // At tau = 1 a fixed nonzero thermal occupation is inconsistent: the
  // channel's underlying thermal photon number N_T = n'/(1 - tau) diverges.
  if (tau == 1.0 && n_t_prime != 0.0) {
    throw std::invalid_argument(
        "lossy channel: tau = 1 requires n_t_prime = 0");
  }
}

LossyChannelParams leg_channel(double tau, double n_t_prime) {
  LossyChannelParams full{tau, n_t_prime};
  full.validate();
  const double sqrt_tau = std::sqrt(tau);
  // Additive term per leg: (1 - sqrt(tau)) (2 N_T + 1) with the shared
  // N_T = n'/(1 - tau), which in fixed-occupation form is n'/(1 + sqrt(tau)).
  return LossyChannelParams{sqrt_tau, n_t_prime / (1.0 + sqrt_tau)};
}

GaussianState apply_lossy_channel(const GaussianState& state,
                                  const LossyChannelParams& ch) {
  ch.validate();
  const double s = std::sqrt(ch.tau);
  const double add = 2.0 * ch.n_t_prime + 1.0 - ch.tau;
  GaussianState out;
  out.displacement = {s * state.displacement.x, s * state.displacement.y};
  out.covariance = {ch.tau * state.covariance.xx + add,
                    ch.tau * state.covariance.xy,
                    ch.tau * state.covariance.yy + add};
  return out;
}

void ClassicalNoiseParams::validate() const {
  if (!finite(xi) || xi < 0.0) {
    throw std::invalid_argument("classical noise: xi must be >= 0");
  }
}

GaussianState apply_classical_noise(const GaussianState& state,
                                    const ClassicalNoiseParams& ch) {
  ch.validate();
  GaussianState out = state;
  out.covariance.xx += ch.xi;
  out.covariance.yy += ch.xi;
  return out;
}

double thermal_photon_number(const GaussianState& state) {
  const Sym2& v = state.covariance;
  if (!v.isotropic()) {
    throw std::invalid_argument(
        "heterodyne: anisotropic covariance is outside this model");
  }
  if (v.xx < 1.0 - 1e-9) {
    throw std::invalid_argument("heterodyne: covariance below vacuum level");
  }
  return std::max(0.0, 0.5 * (v.xx - 1.0));
}

double heterodyne_pdf(const GaussianState& state, complexd beta) {
  const double n = thermal_photon_number(state);
  const double var = n + 1.0;
  const complexd diff = beta - state.centroid();
  return std::exp(-std::norm(diff) / var) / (kPi * var);
}

complexd sample_heterodyne(const GaussianState& state, Rng& rng) {
  const double n = thermal_photon_number(state);
  return rng.complex_normal(state.centroid(), 0.5 * (n + 1.0));
}

} // namespace spoofsim
