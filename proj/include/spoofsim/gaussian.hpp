#pragma once

#include <complex>

#include "spoofsim/rng.hpp"

namespace spoofsim {

using complexd = std::complex<double>;

// ---------------------------------------------------------------------------
// Single-mode Gaussian state algebra.
//
// CONVENTION (fixed project-wide): vacuum covariance = identity. A coherent
// state with complex amplitude a has displacement [2 Re a, 2 Im a] and V = I,
// and a thermal state with mean photon number N has V = (2N+1) I. Other texts
// scale V by 2 or 1/2; every noise number in this code base is expressed in
// the vacuum-equals-identity units.
// ---------------------------------------------------------------------------

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// 2x2 symmetric matrix stored as its upper triangle.
struct Sym2 {
  double xx = 1.0;
  double xy = 0.0;
  double yy = 1.0;

  double min_eigenvalue() const;
  double max_eigenvalue() const;

  /// True when the matrix is (numerically) a multiple of the identity.
  bool isotropic(double rtol = 1e-9) const;
};

struct GaussianState {
  Vec2 displacement;   // [a + a*, i(a* - a)] for centroid a
  Sym2 covariance;     // vacuum = identity

  /// Phase-space centroid as a complex amplitude (x/2 + i y/2).
  complexd centroid() const {
    return {0.5 * displacement.x, 0.5 * displacement.y};
  }
};

/// Coherent state |a>: displacement [2 Re a, 2 Im a], covariance I.
/// Rejects non-finite amplitudes.
GaussianState coherent_state(complexd alpha);

// ---------------------------------------------------------------------------
// Channels
// ---------------------------------------------------------------------------

/// Lossy thermal channel. The environment injects a fixed mean thermal photon
/// number n_t_prime that does not scale with the transmissivity; the channel
/// maps x -> sqrt(tau) x and V -> tau V + (2 n_t_prime + 1 - tau) I.
struct LossyChannelParams {
  double tau = 1.0;        // in (0, 1]; tau = 1 only with n_t_prime = 0
  double n_t_prime = 0.0;  // >= 0

  void validate() const;
};

/// One leg of the two-way path, for the retransmission chain: the full
/// tau-channel splits into two legs of transmissivity sqrt(tau) that share
/// the environment's thermal occupation. Composing the returned leg with
/// itself reproduces the full channel exactly.
LossyChannelParams leg_channel(double tau, double n_t_prime);

GaussianState apply_lossy_channel(const GaussianState& state,
                                  const LossyChannelParams& ch);

/// Classical additive Gaussian noise (quantization model): V -> V + xi I.
struct ClassicalNoiseParams {
  double xi = 0.0; // >= 0, photon-number units

  void validate() const;
};

GaussianState apply_classical_noise(const GaussianState& state,
                                    const ClassicalNoiseParams& ch);

// ---------------------------------------------------------------------------
// Heterodyne measurement
// ---------------------------------------------------------------------------

/// Mean photon number N of an isotropic state with V = (2N+1) I.
/// Throws if the covariance is anisotropic (outside this model) or below
/// the vacuum level.
double thermal_photon_number(const GaussianState& state);

/// Probability density of the heterodyne outcome beta for an isotropic
/// state: exp(-|beta - centroid|^2 / (N+1)) / (pi (N+1)).
double heterodyne_pdf(const GaussianState& state, complexd beta);

/// One heterodyne draw: complex Gaussian with mean = centroid and total
/// complex variance N + 1 (i.e. (N+1)/2 per quadrature).
complexd sample_heterodyne(const GaussianState& state, Rng& rng);

} // namespace spoofsim
