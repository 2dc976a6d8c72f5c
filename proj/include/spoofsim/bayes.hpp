#pragma once

#include "spoofsim/detection.hpp"

namespace spoofsim {

/// Outcome of one thresholded pulse: a spoof call ('+') or an echo call
/// ('-').
enum class Outcome { echo_call = 0, spoof_call = 1 };

/// Likelihood asymmetries of the thresholded heterodyne receiver:
/// P(spoof call | H_i) = (1 + Delta_i)/2 with Delta_i = 2 exp(-mu^2/(N_i+1)) - 1.
struct LikelihoodDeltas {
  double delta0 = 0.0;
  double delta1 = 0.0;
};

LikelihoodDeltas likelihood_deltas(double n0, double n1, double mu);

/// How the per-pulse likelihood enters the posterior product.
///   exact:               multiply by (1 +- Delta_i)/2
///   exponential_approx:  multiply by exp(+-Delta_i)/2, the closed-form
///                        surrogate the convergence formulas are built on
///                        (accurate only for |Delta| << 1, and the only rule
///                        under which mean_prior_difference describes the
///                        simulated certainty).
enum class UpdateRule { exact, exponential_approx };

/// Unnormalized log posterior weights over the two hypotheses.
/// Weights are renormalized every 1024 updates, which leaves all posterior
/// ratios unchanged but keeps the values bounded over arbitrarily long runs.
struct PosteriorState {
  double log_w0 = 0.0;
  double log_w1 = 0.0;
  long long updates = 0;

  static PosteriorState from_priors(double prior_h1 = 0.5);

  double prob_h1() const;
  /// |P1 - P0| of the normalized posterior.
  double certainty() const;
  Hypothesis favored() const; // ties go to h0
};

/// One Bayesian update. A likelihood of exactly zero eliminates that
/// hypothesis (log weight -inf); an outcome impossible under both
/// hypotheses throws std::domain_error.
PosteriorState update_posterior(PosteriorState state, Outcome outcome,
                                const LikelihoodDeltas& d,
                                UpdateRule rule = UpdateRule::exact);

/// Drift rate Delta0 (Delta0 - Delta1) of the approximate update's log
/// posterior difference; positive iff the threshold separates the
/// hypotheses in the sense required by the closed forms below.
double convergence_rate(const LikelihoodDeltas& d);

/// Closed-form mean certainty after `pulses` updates under the exponential
/// approximation: tanh(|M Delta0 (Delta0 - Delta1)| / 2).
double mean_prior_difference(double pulses, const LikelihoodDeltas& d);

/// Smallest integer pulse count whose mean_prior_difference reaches the
/// target certainty in [0, 1). Throws std::domain_error when the rate is
/// not positive (threshold does not separate the hypotheses).
double required_pulses(double target_certainty, const LikelihoodDeltas& d);

/// Time on target: pulses / PRF.
double dwell_time(double pulses, double prf_hz);

} // namespace spoofsim
