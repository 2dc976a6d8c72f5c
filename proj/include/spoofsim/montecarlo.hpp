#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spoofsim/bayes.hpp"
#include "spoofsim/gaussian.hpp"
#include "spoofsim/scenario.hpp"

namespace spoofsim {

// Stochastic end-to-end simulation of both hypotheses. Trials are
// embarrassingly parallel: trial k draws everything from the stream
// Rng::stream(seed, k), and aggregation is a fixed-order reduction over
// trial indices, so results are bit-identical for any thread count.

/// Transmitted amplitude draw from the Gaussian prior: E[a] = 0,
/// E|a|^2 = 1/lambda.
complexd sample_transmit_amplitude(double lambda, Rng& rng);

/// Friendly receiver's heterodyne outcome for a true echo: the coherent
/// pulse through the full lossy channel, quantization noise, then one
/// heterodyne draw. Mean sqrt(tau) a, complex variance N0 + 1.
complexd simulate_echo_outcome(complexd alpha, const HypothesisPair& pair,
                               Rng& rng);

/// Friendly receiver's outcome for a measure-and-retransmit spoof:
///   1. the pulse crosses the first path leg, picks up the adversary's
///      quantization noise, and is heterodyned by the adversary;
///   2. the adversary retransmits a coherent pulse at the measured
///      amplitude, which crosses the second leg, picks up the receiver's
///      quantization noise, and is heterodyned by the receiver.
/// Marginally: mean sqrt(tau) a, complex variance N1 + 1.
complexd simulate_spoof_outcome(complexd alpha, const HypothesisPair& pair,
                                Rng& rng);

/// Outcome drawn straight from the analytic density of the given
/// hypothesis (mean sqrt(tau) a, complex variance N_i + 1). Works for
/// synthetic pairs with no link diagnostics.
complexd sample_outcome_direct(const HypothesisPair& pair, Hypothesis truth,
                               complexd alpha, Rng& rng);

// ---------------------------------------------------------------------------
// Campaigns
// ---------------------------------------------------------------------------

struct CampaignConfig {
  HypothesisPair pair;
  double lambda = 1.0;        // amplitude prior width
  DecisionConfig decision;    // threshold and prior
  Hypothesis truth = Hypothesis::h0;
  long long pulses = 1;
  long long trials = 1;
  std::uint64_t seed = 1;
  UpdateRule rule = UpdateRule::exponential_approx;
  bool record_trajectory = false; // per-pulse certainty of trial 0

  void validate() const;
};

/// Physics-free campaign: outcomes are Bernoulli draws with
/// P(spoof call | truth) = (1 + Delta_truth)/2.
struct SyntheticCampaignConfig {
  LikelihoodDeltas deltas;
  Hypothesis truth = Hypothesis::h0;
  long long pulses = 1;
  long long trials = 1;
  std::uint64_t seed = 1;
  double prior_h1 = 0.5;
  UpdateRule rule = UpdateRule::exponential_approx;
  bool record_trajectory = false;

  void validate() const;
};

struct CampaignResult {
  std::vector<double> final_certainty; // per trial, |P1 - P0|
  std::vector<Hypothesis> decisions;   // per trial
  long long spoof_calls = 0;           // '+' outcomes over all pulses
  long long echo_calls = 0;            // '-' outcomes over all pulses
  double mean_certainty = 0.0;
  double certainty_se = 0.0;
  double accuracy = 0.0;               // fraction of trials deciding = truth
  double accuracy_se = 0.0;
  std::vector<double> trajectory;      // trial 0, when requested
  bool separating = true;              // convergence_rate > 0
  double mu = 0.0;
  LikelihoodDeltas deltas;
  std::uint64_t seed = 0;
};

/// OpenMP-parallel over trials when built with OpenMP; falls back to the
/// serial path otherwise. Output is identical to run_campaign_serial.
CampaignResult run_campaign(const CampaignConfig& cfg);
CampaignResult run_campaign(const SyntheticCampaignConfig& cfg);

/// Serial reference implementation, kept for testing and benchmarking.
CampaignResult run_campaign_serial(const CampaignConfig& cfg);
CampaignResult run_campaign_serial(const SyntheticCampaignConfig& cfg);

// ---------------------------------------------------------------------------
// Single-pulse success estimation
// ---------------------------------------------------------------------------

struct SuccessEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long long trials = 0;
};

/// Balanced echo/spoof single-pulse classification experiment against the
/// threshold mu (defaults to the optimal threshold of the pair). Returns
/// the fraction of correct calls with its binomial standard error.
SuccessEstimate estimate_success_probability(const HypothesisPair& pair,
                                             long long trials,
                                             std::uint64_t seed,
                                             std::optional<double> mu = {});

} // namespace spoofsim
