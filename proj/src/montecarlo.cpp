#include "spoofsim/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spoofsim {

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over master advanced by the stream index
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

complexd sample_transmit_amplitude(double lambda, Rng& rng) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("sample_transmit_amplitude: lambda must be > 0");
  }
  return rng.complex_normal({0.0, 0.0}, 0.5 / lambda);
}

namespace {

void require_physical_pair(const HypothesisPair& pair) {
  if (!(pair.tau > 0.0) || pair.tau >= 1.0) {
    throw std::invalid_argument(
        "montecarlo: chain simulation needs tau in (0, 1)");
  }
}

} // namespace

complexd simulate_echo_outcome(complexd alpha, const HypothesisPair& pair,
                               Rng& rng) {
  require_physical_pair(pair);
  GaussianState pulse = coherent_state(alpha);
  pulse = apply_lossy_channel(pulse, {pair.tau, pair.thermal_occupation()});
  pulse = apply_classical_noise(pulse, {pair.xi});
  return sample_heterodyne(pulse, rng);
}

complexd simulate_spoof_outcome(complexd alpha, const HypothesisPair& pair,
                                Rng& rng) {
  require_physical_pair(pair);
  const LossyChannelParams leg =
      leg_channel(pair.tau, pair.thermal_occupation());

  // transmitter -> adversary: half the path, the adversary's converter,
  // then the adversary's own heterodyne measurement
  GaussianState intercepted = coherent_state(alpha);
  intercepted = apply_lossy_channel(intercepted, leg);
  intercepted = apply_classical_noise(intercepted, {pair.xi_prime});
  const complexd measured = sample_heterodyne(intercepted, rng);

  // adversary -> receiver: a fresh coherent pulse at the measured amplitude
  // over the second leg, the receiver's converter, and its heterodyne
  GaussianState spoof = coherent_state(measured);
  spoof = apply_lossy_channel(spoof, leg);
  spoof = apply_classical_noise(spoof, {pair.xi});
  return sample_heterodyne(spoof, rng);
}

complexd sample_outcome_direct(const HypothesisPair& pair, Hypothesis truth,
                               complexd alpha, Rng& rng) {
  const double n = truth == Hypothesis::h0 ? pair.n0 : pair.n1;
  const complexd mean = pair.sqrt_tau * alpha;
  return rng.complex_normal(mean, 0.5 * (n + 1.0));
}

void CampaignConfig::validate() const {
  require_physical_pair(pair);
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("campaign: lambda must be > 0");
  }
  decision.validate();
  if (pulses < 1 || trials < 1) {
    throw std::invalid_argument("campaign: pulses and trials must be >= 1");
  }
}

void SyntheticCampaignConfig::validate() const {
  if (std::abs(deltas.delta0) > 1.0 || std::abs(deltas.delta1) > 1.0 ||
      !std::isfinite(deltas.delta0) || !std::isfinite(deltas.delta1)) {
    throw std::invalid_argument("campaign: deltas must lie in [-1, 1]");
  }
  if (!(prior_h1 >= 0.0 && prior_h1 <= 1.0)) {
    throw std::invalid_argument("campaign: prior must lie in [0, 1]");
  }
  if (pulses < 1 || trials < 1) {
    throw std::invalid_argument("campaign: pulses and trials must be >= 1");
  }
}

namespace {

struct TrialRecord {
  double certainty = 0.0;
  Hypothesis decision = Hypothesis::h0;
  long long spoof_calls = 0;
  long long echo_calls = 0;
};

// One trial: its own stream, M updates, final posterior summary.
template <typename DrawOutcome>
TrialRecord run_trial(std::uint64_t seed, long long trial, long long pulses,
                      double prior_h1, const LikelihoodDeltas& deltas,
                      UpdateRule rule, const DrawOutcome& draw,
                      std::vector<double>* trajectory) {
  Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
  PosteriorState post = PosteriorState::from_priors(prior_h1);
  TrialRecord rec;
  for (long long p = 0; p < pulses; ++p) {
    const Outcome outcome = draw(rng);
    if (outcome == Outcome::spoof_call) {
      ++rec.spoof_calls;
    } else {
      ++rec.echo_calls;
    }
    post = update_posterior(post, outcome, deltas, rule);
    if (trajectory) {
      trajectory->push_back(post.certainty());
    }
  }
  rec.certainty = post.certainty();
  rec.decision = post.favored();
  return rec;
}

template <typename DrawOutcome>
CampaignResult run_campaign_impl(long long pulses, long long trials,
                                 std::uint64_t seed, double prior_h1,
                                 const LikelihoodDeltas& deltas,
                                 UpdateRule rule, Hypothesis truth, double mu,
                                 bool record_trajectory, bool parallel,
                                 const DrawOutcome& draw) {
  CampaignResult result;
  result.final_certainty.resize(static_cast<std::size_t>(trials));
  result.decisions.resize(static_cast<std::size_t>(trials));
  result.mu = mu;
  result.deltas = deltas;
  result.seed = seed;
  result.separating = convergence_rate(deltas) > 0.0;
  std::vector<double> trajectory;
  if (record_trajectory) {
    trajectory.reserve(static_cast<std::size_t>(pulses));
  }

  std::vector<TrialRecord> records(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(static) if (parallel)
  for (long long t = 0; t < trials; ++t) {
    records[static_cast<std::size_t>(t)] =
        run_trial(seed, t, pulses, prior_h1, deltas, rule, draw,
                  record_trajectory && t == 0 ? &trajectory : nullptr);
  }

  // fixed-order reduction: results do not depend on the thread count
  long long correct = 0;
  double sum = 0.0;
  for (long long t = 0; t < trials; ++t) {
    const TrialRecord& rec = records[static_cast<std::size_t>(t)];
    result.final_certainty[static_cast<std::size_t>(t)] = rec.certainty;
    result.decisions[static_cast<std::size_t>(t)] = rec.decision;
    result.spoof_calls += rec.spoof_calls;
    result.echo_calls += rec.echo_calls;
    if (rec.decision == truth) {
      ++correct;
    }
    sum += rec.certainty;
  }
  const double n = static_cast<double>(trials);
  result.mean_certainty = sum / n;
  if (trials > 1) {
    double ss = 0.0;
    for (double c : result.final_certainty) {
      const double dev = c - result.mean_certainty;
      ss += dev * dev;
    }
    result.certainty_se = std::sqrt(ss / (n - 1.0) / n);
  }
  result.accuracy = static_cast<double>(correct) / n;
  result.accuracy_se =
      std::sqrt(result.accuracy * (1.0 - result.accuracy) / n);
  result.trajectory = std::move(trajectory);
  return result;
}

CampaignResult run_physics(const CampaignConfig& cfg, bool parallel) {
  cfg.validate();
  const double mu = cfg.decision.threshold_mu;
  const LikelihoodDeltas deltas =
      likelihood_deltas(cfg.pair.n0, cfg.pair.n1, mu);
  const auto draw = [&cfg, mu](Rng& rng) {
    const complexd alpha = sample_transmit_amplitude(cfg.lambda, rng);
    const complexd beta = cfg.truth == Hypothesis::h0
                              ? simulate_echo_outcome(alpha, cfg.pair, rng)
                              : simulate_spoof_outcome(alpha, cfg.pair, rng);
    const complexd expected = cfg.pair.sqrt_tau * alpha;
    return classify(beta, expected, mu) == Hypothesis::h1
               ? Outcome::spoof_call
               : Outcome::echo_call;
  };
  return run_campaign_impl(cfg.pulses, cfg.trials, cfg.seed,
                           cfg.decision.prior_h1, deltas, cfg.rule, cfg.truth,
                           mu, cfg.record_trajectory, parallel, draw);
}

CampaignResult run_synthetic(const SyntheticCampaignConfig& cfg,
                             bool parallel) {
  cfg.validate();
  const double delta_truth =
      cfg.truth == Hypothesis::h0 ? cfg.deltas.delta0 : cfg.deltas.delta1;
  const double p_spoof_call = 0.5 * (1.0 + delta_truth);
  const auto draw = [p_spoof_call](Rng& rng) {
    return rng.uniform() <= p_spoof_call ? Outcome::spoof_call
                                         : Outcome::echo_call;
  };
  CampaignResult result = run_campaign_impl(
      cfg.pulses, cfg.trials, cfg.seed, cfg.prior_h1, cfg.deltas, cfg.rule,
      cfg.truth, std::numeric_limits<double>::quiet_NaN(),
      cfg.record_trajectory, parallel, draw);
  return result;
}

} // namespace

CampaignResult run_campaign(const CampaignConfig& cfg) {
  return run_physics(cfg, true);
}

CampaignResult run_campaign_serial(const CampaignConfig& cfg) {
  return run_physics(cfg, false);
}

CampaignResult run_campaign(const SyntheticCampaignConfig& cfg) {
  return run_synthetic(cfg, true);
}

CampaignResult run_campaign_serial(const SyntheticCampaignConfig& cfg) {
  return run_synthetic(cfg, false);
}

SuccessEstimate estimate_success_probability(const HypothesisPair& pair,
                                             long long trials,
                                             std::uint64_t seed,
                                             std::optional<double> mu) {
  if (trials < 1) {
    throw std::invalid_argument(
        "estimate_success_probability: trials must be >= 1");
  }
  const double threshold =
      mu ? *mu : optimal_heterodyne_threshold(pair.n0, pair.n1);
  if (!(threshold >= 0.0)) {
    throw std::invalid_argument("estimate_success_probability: mu must be >= 0");
  }

  // Success probabilities are amplitude-independent, so the experiment runs
  // at alpha = 0 with outcomes drawn from the analytic densities. Even trial
  // indices carry a true echo, odd ones a spoof.
  std::vector<std::uint8_t> correct(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(static)
  for (long long t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    const Hypothesis truth = t % 2 == 0 ? Hypothesis::h0 : Hypothesis::h1;
    const complexd beta = sample_outcome_direct(pair, truth, {0.0, 0.0}, rng);
    const Hypothesis call = classify(beta, {0.0, 0.0}, threshold);
    correct[static_cast<std::size_t>(t)] = call == truth ? 1 : 0;
  }
  long long hits = 0;
  for (std::uint8_t c : correct) {
    hits += c;
  }
  SuccessEstimate est;
  est.trials = trials;
  est.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) /
                            static_cast<double>(trials));
  return est;
}

} // namespace spoofsim
