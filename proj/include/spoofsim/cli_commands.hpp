#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spoofsim/bayes.hpp"
#include "spoofsim/montecarlo.hpp"
#include "spoofsim/scenario.hpp"

// Subcommand implementations, kept free of flag parsing so they can be
// driven directly from tests. Tabular commands write CSV (header row always,
// floats with 17 significant digits) to `out` and human-readable notes to
// `diag`; `simulate` writes a JSON report.

namespace spoofsim::cli {

/// Converter resolution given on the command line: a positive bit count or
/// "inf" for an ideal converter (no quantization noise).
struct BitsSpec {
  bool infinite = false;
  int bits = 0;

  static BitsSpec parse(const std::string& text);
  std::optional<int> value() const; // nullopt when infinite
  std::string str() const;          // "inf" or the bit count
};

struct SweepSpec {
  double range_start_m = 300.0;
  double range_stop_m = 100e3;
  int points = 200;
  bool log_spaced = true;

  void validate() const;
  std::vector<double> ranges() const;
};

/// Link-budget sweep: range_m, tau, xi, xi_prime, N0, N1.
void cmd_link(const RadarScenario& sc, const SweepSpec& sweep,
              const std::optional<BitsSpec>& bits, std::ostream& out,
              std::ostream& diag);

/// Single-pulse detection sweep, one row family per converter resolution:
/// range_m, bits, p_opt_minus_half, p_het_minus_half, mu_opt.
void cmd_detect(const RadarScenario& sc, const SweepSpec& sweep,
                const std::vector<BitsSpec>& bits_list, std::ostream& out,
                std::ostream& diag);

struct BayesArgs {
  std::optional<BitsSpec> bits;          // default: scenario converters
  double target = 0.95;
  int points = 200;
  std::optional<long long> mc_trials;    // adds Monte Carlo columns
  std::uint64_t seed = 1;
  std::optional<LikelihoodDeltas> synthetic_deltas;
};

/// Posterior-convergence curve over a pulse-count grid:
/// M, mean_diff_formula[, mean_diff_montecarlo, mc_stderr].
void cmd_bayes(const RadarScenario& sc, const BayesArgs& args,
               std::ostream& out, std::ostream& diag);

struct DwellArgs {
  std::optional<BitsSpec> bits;
  double target = 0.9;
  std::optional<double> prf_hz;          // default: scenario PRF
};

/// Dwell-time sweep: range_m, M_required, dwell_s ("inf" rows when the
/// threshold does not separate the hypotheses).
void cmd_dwell(const RadarScenario& sc, const SweepSpec& sweep,
               const DwellArgs& args, std::ostream& out, std::ostream& diag);

struct SimulateArgs {
  Hypothesis truth = Hypothesis::h0;
  std::optional<long long> pulses;       // default: pulses for 0.9 certainty
  long long trials = 100;
  std::uint64_t seed = 1;
  std::optional<BitsSpec> bits;
  std::optional<double> mu;              // default: optimal threshold
  UpdateRule rule = UpdateRule::exponential_approx;
  bool trajectory = false;
  std::optional<LikelihoodDeltas> synthetic_deltas;
};

/// Full campaign; emits a reproducible JSON report (config echo + seed).
void cmd_simulate(const RadarScenario& sc, const SimulateArgs& args,
                  std::ostream& out, std::ostream& diag);

} // namespace spoofsim::cli
