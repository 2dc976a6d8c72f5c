#include "spoofsim/bayes.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spoofsim {

namespace {
constexpr double kLn2 = 0.6931471805599453;
constexpr long long kRenormEvery = 1024;
} // namespace

LikelihoodDeltas likelihood_deltas(double n0, double n1, double mu) {
  if (!(mu >= 0.0)) {
    throw std::invalid_argument("likelihood_deltas: mu must be >= 0");
  }
  if (!(n0 >= 0.0) || !(n1 >= 0.0)) {
    throw std::invalid_argument("likelihood_deltas: noise numbers must be >= 0");
  }
  return {2.0 * std::exp(-mu * mu / (n0 + 1.0)) - 1.0,
          2.0 * std::exp(-mu * mu / (n1 + 1.0)) - 1.0};
}

PosteriorState PosteriorState::from_priors(double prior_h1) {
  if (!(prior_h1 >= 0.0 && prior_h1 <= 1.0)) {
    throw std::invalid_argument("PosteriorState: prior must lie in [0, 1]");
  }
  return {std::log1p(-prior_h1), std::log(prior_h1), 0};
}

double PosteriorState::prob_h1() const {
  // logistic of the log weight difference; exact at -inf weights
  if (std::isinf(log_w1) && log_w1 < 0.0) {
    return 0.0;
  }
  if (std::isinf(log_w0) && log_w0 < 0.0) {
    return 1.0;
  }
  return 1.0 / (1.0 + std::exp(log_w0 - log_w1));
}

double PosteriorState::certainty() const {
  const double p1 = prob_h1();
  return std::abs(2.0 * p1 - 1.0);
}

Hypothesis PosteriorState::favored() const {
  return log_w1 > log_w0 ? Hypothesis::h1 : Hypothesis::h0;
}

PosteriorState update_posterior(PosteriorState state, Outcome outcome,
                                const LikelihoodDeltas& d, UpdateRule rule) {
  const double sign = outcome == Outcome::spoof_call ? 1.0 : -1.0;
  double inc0;
  double inc1;
  if (rule == UpdateRule::exact) {
    inc0 = std::log1p(sign * d.delta0) - kLn2;
    inc1 = std::log1p(sign * d.delta1) - kLn2;
  } else {
    inc0 = sign * d.delta0 - kLn2;
    inc1 = sign * d.delta1 - kLn2;
  }
  state.log_w0 += inc0;
  state.log_w1 += inc1;
  state.updates += 1;
  if (std::isinf(state.log_w0) && std::isinf(state.log_w1)) {
    throw std::domain_error(
        "update_posterior: outcome impossible under both hypotheses");
  }
  if (state.updates % kRenormEvery == 0) {
    const double top = std::max(state.log_w0, state.log_w1);
    state.log_w0 -= top;
    state.log_w1 -= top;
  }
  return state;
}

double convergence_rate(const LikelihoodDeltas& d) {
  return d.delta0 * (d.delta0 - d.delta1);
}

double mean_prior_difference(double pulses, const LikelihoodDeltas& d) {
  if (!(pulses >= 0.0)) {
    throw std::invalid_argument("mean_prior_difference: pulses must be >= 0");
  }
  return std::tanh(0.5 * std::abs(pulses * convergence_rate(d)));
}

double required_pulses(double target_certainty, const LikelihoodDeltas& d) {
  if (!(target_certainty >= 0.0 && target_certainty < 1.0)) {
    throw std::invalid_argument(
        "required_pulses: target certainty must lie in [0, 1)");
  }
  const double rate = convergence_rate(d);
  if (!(rate > 0.0)) {
    throw std::domain_error(
        "required_pulses: threshold does not separate the hypotheses "
        "(Delta0 (Delta0 - Delta1) <= 0)");
  }
  // M = 2 atanh(target) / rate, rounded up to a whole pulse.
  return std::ceil(2.0 * std::atanh(target_certainty) / rate);
}

double dwell_time(double pulses, double prf_hz) {
  if (!(prf_hz > 0.0)) {
    throw std::invalid_argument("dwell_time: prf must be positive");
  }
  if (!(pulses >= 0.0)) {
    throw std::invalid_argument("dwell_time: pulses must be >= 0");
  }
  return pulses / prf_hz;
}

} // namespace spoofsim
