#pragma once

#include <complex>

namespace spoofsim {

using complexd = std::complex<double>;

enum class Hypothesis { h0 = 0, h1 = 1 }; // h0 = true echo, h1 = spoof

/// Single-pulse decision parameters for the heterodyne receiver.
struct DecisionConfig {
  double threshold_mu = 0.0; // decision radius, >= 0
  double prior_h1 = 0.5;     // prior probability of a spoof

  void validate() const;
};

// All probabilities below depend only on (n0, n1, mu): the success
// probabilities are independent of the transmitted amplitude, which both
// hypotheses displace identically.

/// Photon-count decision threshold for optimal discrimination of the two
/// thermal noise distributions:
///   m = floor( ln((N1+1)/(N0+1)) / ln(N1 (N0+1) / (N0 (N1+1))) ).
/// Counts of m or fewer photons favor a true echo.
/// Requires n1 > n0 > 0; throws std::domain_error otherwise (degenerate or
/// singular pair).
long helstrom_threshold(double n0, double n1);

/// Maximum success probability over all receivers, at equal priors:
///   P = 1/2 (1 - q0^(m+1)) + 1/2 q1^(m+1),  q_i = N_i/(N_i+1),
/// i.e. counts {0..m} assigned to the echo hypothesis and {m+1..} to the
/// spoof hypothesis. Returns exactly 0.5 when n1 == n0.
double p_opt(double n0, double n1);

/// P_opt - 1/2 evaluated without cancellation (resolves 1e-9 excesses).
double p_opt_excess(double n0, double n1);

/// Truncation point for the brute-force Fock-basis evaluation.
struct FockCutoff {
  long n_max = 1;

  /// Smallest cutoff with both geometric tails (N_i/(N_i+1))^(n_max+1)
  /// below tail_bound.
  static FockCutoff auto_select(double n0, double n1,
                                double tail_bound = 1e-12);

  /// Total neglected tail mass of the two photon-number distributions.
  double tail_mass(double n0, double n1) const;
};

/// Independent brute-force route to p_opt: term-by-term trace distance of
/// the two photon-number distributions, P = 1/2 (1 + 1/2 sum_n |p1 - p0|).
/// Throws if the cutoff leaves more than 1e-9 of tail mass.
double p_opt_oracle(double n0, double n1, const FockCutoff& cutoff);

/// Threshold radius maximizing p_het; equals the radius where the two
/// outcome densities intersect:
///   mu^2 = (N0+1) ln((N1+1)/(N0+1)) / (1 - (N0+1)/(N1+1)).
/// For n1 == n0 returns the analytic limit mu^2 -> N0+1. Rejects n1 < n0.
double optimal_heterodyne_threshold(double n0, double n1);

/// Success probability of heterodyne + threshold at equal priors:
///   P = 1/2 (1 - exp(-mu^2/(N0+1))) + 1/2 exp(-mu^2/(N1+1)).
double p_het(double n0, double n1, double mu);

/// P_het - 1/2 in cancellation-safe form.
double p_het_excess(double n0, double n1, double mu);

/// Threshold rule on one heterodyne outcome, measured relative to the
/// expected return: |beta - centroid| <= mu selects the echo hypothesis
/// (boundary inclusive), anything outside selects the spoof hypothesis.
Hypothesis classify(complexd beta, complexd centroid, double mu);

} // namespace spoofsim
