// spoofsim -- quantum-noise limits on radar spoof detection.
//
// Subcommands sweep the closed-form link-budget/detection/convergence
// quantities to CSV and run seeded Monte Carlo campaigns to JSON. Exit
// codes: 0 success, 2 usage or config error, 3 out-of-model parameters.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "spoofsim/cli_commands.hpp"
#include "spoofsim/config_io.hpp"
#include "spoofsim/errors.hpp"

namespace {

using spoofsim::Hypothesis;
using spoofsim::LikelihoodDeltas;
using spoofsim::RadarScenario;
using spoofsim::UpdateRule;
namespace cli = spoofsim::cli;

constexpr int kExitUsage = 2;
constexpr int kExitOutOfModel = 3;

struct CommonOpts {
  std::string config_path;
  std::string output = "-";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path,
                  "Scenario config file (JSON); built-in W-band defaults "
                  "when omitted");
  cmd->add_option("--output", opts.output, "Output file, or '-' for stdout")
      ->capture_default_str();
}

void add_sweep(CLI::App* cmd, cli::SweepSpec& sweep) {
  cmd->add_option("--range-start", sweep.range_start_m,
                  "Sweep start range [m]")
      ->capture_default_str();
  cmd->add_option("--range-stop", sweep.range_stop_m, "Sweep stop range [m]")
      ->capture_default_str();
  cmd->add_option("--points", sweep.points, "Number of sweep points")
      ->capture_default_str();
  cmd->add_option("--log-spaced", sweep.log_spaced,
                  "Logarithmic range spacing (true/false)")
      ->capture_default_str();
}

RadarScenario load_config(const CommonOpts& opts) {
  if (opts.config_path.empty()) {
    return spoofsim::wband_default_scenario();
  }
  return spoofsim::load_scenario(opts.config_path);
}

// Runs a command with its output going to --output, atomically buffered.
template <typename Fn>
void with_output(const CommonOpts& opts, Fn&& fn) {
  std::ostringstream buffer;
  fn(buffer);
  if (opts.output == "-") {
    std::cout << buffer.str();
  } else {
    std::ofstream file(opts.output, std::ios::binary);
    if (!file) {
      throw spoofsim::config_error("cannot open output file '" + opts.output +
                                   "'");
    }
    file << buffer.str();
  }
}

std::optional<LikelihoodDeltas> synthetic_from(std::optional<double> d0,
                                               std::optional<double> d1) {
  if (!d0 && !d1) {
    return std::nullopt;
  }
  if (!d0 || !d1) {
    throw CLI::ValidationError(
        "--delta0 and --delta1 must be given together");
  }
  return LikelihoodDeltas{*d0, *d1};
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-noise-limited radar spoof detection simulator"};
  app.require_subcommand(1);

  // --- link -----------------------------------------------------------
  CommonOpts link_common;
  cli::SweepSpec link_sweep;
  std::string link_bits;
  auto* link = app.add_subcommand(
      "link", "Link budget sweep: tau, quantization variances, N0/N1");
  add_common(link, link_common);
  add_sweep(link, link_sweep);
  link->add_option("--bits", link_bits,
                   "Converter resolution for both sides (integer or 'inf'); "
                   "default: config values");

  // --- detect ---------------------------------------------------------
  CommonOpts detect_common;
  cli::SweepSpec detect_sweep;
  std::vector<std::string> detect_bits = {"32", "inf"};
  auto* detect = app.add_subcommand(
      "detect", "Single-pulse success probabilities vs range");
  add_common(detect, detect_common);
  add_sweep(detect, detect_sweep);
  detect
      ->add_option("--bits", detect_bits,
                   "Resolution row families (integers or 'inf')")
      ->delimiter(',')
      ->capture_default_str();

  // --- bayes ----------------------------------------------------------
  CommonOpts bayes_common;
  cli::BayesArgs bayes_args;
  std::string bayes_bits;
  std::optional<double> bayes_d0;
  std::optional<double> bayes_d1;
  std::optional<long long> bayes_mc;
  auto* bayes = app.add_subcommand(
      "bayes", "Mean posterior difference vs pulse count");
  add_common(bayes, bayes_common);
  bayes->add_option("--bits", bayes_bits,
                    "Converter resolution (integer or 'inf'); default: "
                    "config values");
  bayes->add_option("--target", bayes_args.target,
                    "Certainty level to report the pulse count for")
      ->capture_default_str();
  bayes->add_option("--points", bayes_args.points, "Pulse-count grid size")
      ->capture_default_str();
  bayes->add_option("--mc", bayes_mc,
                    "Validate each grid row with this many Monte Carlo "
                    "trials");
  bayes->add_option("--seed", bayes_args.seed, "Monte Carlo master seed")
      ->capture_default_str();
  bayes->add_option("--delta0", bayes_d0,
                    "Synthetic likelihood asymmetry under a true echo "
                    "(bypasses the radar model)");
  bayes->add_option("--delta1", bayes_d1,
                    "Synthetic likelihood asymmetry under a spoof");

  // --- dwell ----------------------------------------------------------
  CommonOpts dwell_common;
  cli::SweepSpec dwell_sweep;
  cli::DwellArgs dwell_args;
  std::string dwell_bits;
  std::optional<double> dwell_prf;
  auto* dwell = app.add_subcommand(
      "dwell", "Dwell time to reach a target certainty vs range");
  add_common(dwell, dwell_common);
  add_sweep(dwell, dwell_sweep);
  dwell->add_option("--bits", dwell_bits,
                    "Converter resolution (integer or 'inf'); default: "
                    "config values");
  dwell->add_option("--target", dwell_args.target, "Certainty level")
      ->capture_default_str();
  dwell->add_option("--prf", dwell_prf,
                    "Pulse repetition frequency [Hz]; default: config value");

  // --- simulate -------------------------------------------------------
  CommonOpts sim_common;
  cli::SimulateArgs sim_args;
  std::string sim_truth;
  std::string sim_bits;
  std::string sim_rule = "exponential_approx";
  std::optional<long long> sim_pulses;
  std::optional<double> sim_mu;
  std::optional<double> sim_d0;
  std::optional<double> sim_d1;
  auto* simulate = app.add_subcommand(
      "simulate", "Seeded Monte Carlo campaign, JSON report");
  add_common(simulate, sim_common);
  simulate
      ->add_option("--truth", sim_truth,
                   "Ground truth for the campaign: h0 (echo) or h1 (spoof)")
      ->required()
      ->check(CLI::IsMember({"h0", "h1"}));
  simulate->add_option("--pulses", sim_pulses,
                       "Pulses per trial; default: count needed for 0.9 "
                       "certainty");
  simulate->add_option("--trials", sim_args.trials, "Independent trials")
      ->capture_default_str();
  simulate->add_option("--seed", sim_args.seed, "Master seed")
      ->capture_default_str();
  simulate->add_option("--bits", sim_bits,
                       "Converter resolution (integer or 'inf'); default: "
                       "config values");
  simulate->add_option("--mu", sim_mu,
                       "Decision threshold; default: optimal");
  simulate
      ->add_option("--update-rule", sim_rule,
                   "Posterior update rule; the closed-form convergence "
                   "figures assume exponential_approx")
      ->check(CLI::IsMember({"exact", "exponential_approx"}))
      ->capture_default_str();
  simulate->add_flag("--trajectory", sim_args.trajectory,
                     "Record trial 0's per-pulse certainty");
  simulate->add_option("--delta0", sim_d0,
                       "Synthetic likelihood asymmetry under a true echo");
  simulate->add_option("--delta1", sim_d1,
                       "Synthetic likelihood asymmetry under a spoof");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (link->parsed()) {
      std::optional<cli::BitsSpec> bits;
      if (!link_bits.empty()) {
        bits = cli::BitsSpec::parse(link_bits);
      }
      const RadarScenario sc = load_config(link_common);
      with_output(link_common, [&](std::ostream& out) {
        cli::cmd_link(sc, link_sweep, bits, out, std::cerr);
      });
    } else if (detect->parsed()) {
      std::vector<cli::BitsSpec> bits;
      bits.reserve(detect_bits.size());
      for (const std::string& b : detect_bits) {
        bits.push_back(cli::BitsSpec::parse(b));
      }
      const RadarScenario sc = load_config(detect_common);
      with_output(detect_common, [&](std::ostream& out) {
        cli::cmd_detect(sc, detect_sweep, bits, out, std::cerr);
      });
    } else if (bayes->parsed()) {
      if (!bayes_bits.empty()) {
        bayes_args.bits = cli::BitsSpec::parse(bayes_bits);
      }
      bayes_args.mc_trials = bayes_mc;
      bayes_args.synthetic_deltas = synthetic_from(bayes_d0, bayes_d1);
      const RadarScenario sc = load_config(bayes_common);
      with_output(bayes_common, [&](std::ostream& out) {
        cli::cmd_bayes(sc, bayes_args, out, std::cerr);
      });
    } else if (dwell->parsed()) {
      if (!dwell_bits.empty()) {
        dwell_args.bits = cli::BitsSpec::parse(dwell_bits);
      }
      dwell_args.prf_hz = dwell_prf;
      const RadarScenario sc = load_config(dwell_common);
      with_output(dwell_common, [&](std::ostream& out) {
        cli::cmd_dwell(sc, dwell_sweep, dwell_args, out, std::cerr);
      });
    } else if (simulate->parsed()) {
      sim_args.truth = sim_truth == "h1" ? Hypothesis::h1 : Hypothesis::h0;
      sim_args.pulses = sim_pulses;
      sim_args.mu = sim_mu;
      sim_args.rule = sim_rule == "exact" ? UpdateRule::exact
                                          : UpdateRule::exponential_approx;
      if (!sim_bits.empty()) {
        sim_args.bits = cli::BitsSpec::parse(sim_bits);
      }
      sim_args.synthetic_deltas = synthetic_from(sim_d0, sim_d1);
      const RadarScenario sc = load_config(sim_common);
      with_output(sim_common, [&](std::ostream& out) {
        cli::cmd_simulate(sc, sim_args, out, std::cerr);
      });
    }
  } catch (const spoofsim::out_of_model_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOutOfModel;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOutOfModel;
  } catch (const spoofsim::config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
