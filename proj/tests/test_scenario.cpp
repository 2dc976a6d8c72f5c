#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "spoofsim/errors.hpp"
#include "spoofsim/scenario.hpp"

using namespace spoofsim;

namespace {

RadarScenario at_range(double range_m, int bits = 10) {
  RadarScenario sc = wband_default_scenario();
  sc.range_m = range_m;
  sc.bits_receiver = bits;
  sc.bits_spoofer = bits;
  return sc;
}

// Range where the given quantization variance crosses 1, by bisection on
// a bracketing interval (variances decrease monotonically with range).
double crossing_range(int bits, bool spoofer_path, double lo, double hi) {
  auto variance_at = [&](double r) {
    const RadarScenario sc = at_range(r, bits);
    const double tau = transmissivity(sc);
    return quantization_variance(spoofer_path ? std::sqrt(tau) : tau, bits,
                                 sc);
  };
  REQUIRE(variance_at(lo) > 1.0);
  REQUIRE(variance_at(hi) < 1.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (variance_at(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("scenario validation") {
  RadarScenario sc = wband_default_scenario();
  CHECK_NOTHROW(sc.validate());

  sc.range_m = 0.0;
  CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  sc = wband_default_scenario();
  sc.bits_receiver = 0;
  CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  sc = wband_default_scenario();
  sc.avg_power_w = -1.0;
  CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  sc = wband_default_scenario();
  sc.n_t_prime = -0.5;
  CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
}

TEST_CASE("transmissivity") {
  // reference values from a 40-digit evaluation of the link formula
  CHECK(transmissivity(at_range(1000.0)) ==
        doctest::Approx(7.0459387911916305e-12).epsilon(1e-12));
  CHECK(transmissivity(at_range(10000.0)) ==
        doctest::Approx(7.0459387911916305e-16).epsilon(1e-12));

  SUBCASE("inverse fourth power of range") {
    for (double r : {500.0, 1000.0, 25000.0}) {
      const double t1 = transmissivity(at_range(r));
      const double t2 = transmissivity(at_range(2.0 * r));
      CHECK(t1 / t2 == doctest::Approx(16.0).epsilon(1e-12));
    }
  }

  SUBCASE("unphysically close ranges are out of model") {
    CHECK_THROWS_AS(transmissivity(at_range(1.0)), out_of_model_error);
  }
}

TEST_CASE("quantization variance anchors") {
  const RadarScenario sc1km = at_range(1000.0);
  const double tau = transmissivity(sc1km);

  const double xi_n10 = quantization_variance(tau, 10, sc1km);
  CHECK(xi_n10 == doctest::Approx(86536.959932792575).epsilon(1e-12));
  CHECK(xi_n10 == doctest::Approx(9e4).epsilon(0.10)); // reported ~9e4

  CHECK(quantization_variance(tau, 32, sc1km) ==
        doctest::Approx(0.020632019026945251).epsilon(1e-12));
  CHECK(quantization_variance(std::sqrt(tau), 32, sc1km) ==
        doctest::Approx(7772.7069953703009).epsilon(1e-12));

  SUBCASE("unit crossings sit at the reported ranges (within 10%)") {
    CHECK(crossing_range(10, false, 1e3, 1e6) ==
          doctest::Approx(17e3).epsilon(0.10));
    CHECK(crossing_range(32, false, 10.0, 1e4) ==
          doctest::Approx(375.0).epsilon(0.10));
    CHECK(crossing_range(32, true, 1e3, 1e7) ==
          doctest::Approx(88e3).epsilon(0.10));
    CHECK(crossing_range(10, true, 1e6, 1e10) ==
          doctest::Approx(1.8e8).epsilon(0.10));
  }

  SUBCASE("monotone in bits and range, spoofer side always noisier") {
    double prev_xi = INFINITY;
    double prev_xip = INFINITY;
    for (int bits = 1; bits <= 40; ++bits) {
      const double xi = quantization_variance(tau, bits, sc1km);
      const double xip = quantization_variance(std::sqrt(tau), bits, sc1km);
      CHECK(xi < prev_xi);
      CHECK(xip < prev_xip);
      CHECK(xi < xip);
      prev_xi = xi;
      prev_xip = xip;
    }
    double prev = INFINITY;
    for (double r = 300.0; r <= 1e5; r *= 2.0) {
      const RadarScenario sc = at_range(r);
      const double v = quantization_variance(transmissivity(sc), 10, sc);
      CHECK(v < prev);
      prev = v;
    }
  }

  CHECK_THROWS_AS(quantization_variance(0.0, 10, sc1km),
                  std::invalid_argument);
  CHECK_THROWS_AS(quantization_variance(0.5, 0, sc1km),
                  std::invalid_argument);
}

TEST_CASE("hypothesis noise numbers") {
  SUBCASE("1 km, 32-bit converters") {
    const HypothesisPair pair = hypothesis_noise_numbers(at_range(1000.0, 32));
    CHECK(pair.n0 == doctest::Approx(32.010316009513473).epsilon(1e-12));
    CHECK(pair.n1 == doctest::Approx(32.020634673445675).epsilon(1e-12));
    CHECK(pair.n1 - pair.n0 == doctest::Approx(1.0318663932e-2).epsilon(1e-6));
    CHECK(pair.thermal_occupation() == doctest::Approx(32.0).epsilon(1e-12));
  }

  SUBCASE("10 km, 32-bit converters") {
    const HypothesisPair pair =
        hypothesis_noise_numbers(at_range(10000.0, 32));
    CHECK(pair.n0 == doctest::Approx(32.000001031600951).epsilon(1e-12));
    CHECK(pair.n1 - pair.n0 == doctest::Approx(1.058145e-6).epsilon(1e-5));
  }

  SUBCASE("ideal converters zero the quantization terms") {
    const HypothesisPair pair = hypothesis_noise_numbers(
        at_range(1000.0), std::nullopt, std::nullopt);
    CHECK(pair.xi == 0.0);
    CHECK(pair.xi_prime == 0.0);
    CHECK(pair.n0 == 32.0);
    CHECK(pair.n1 == doctest::Approx(32.0 + pair.sqrt_tau).epsilon(1e-15));
  }

  SUBCASE("separation shrinks toward degeneracy with range") {
    double prev = INFINITY;
    for (double r : {1e3, 1e4, 1e5, 1e6}) {
      const HypothesisPair pair = hypothesis_noise_numbers(at_range(r, 32));
      CHECK(pair.n1 > pair.n0);
      CHECK(pair.n1 - pair.n0 < prev);
      prev = pair.n1 - pair.n0;
    }
  }

  SUBCASE("pure function: identical inputs give identical outputs") {
    const HypothesisPair a = hypothesis_noise_numbers(at_range(1234.5, 32));
    const HypothesisPair b = hypothesis_noise_numbers(at_range(1234.5, 32));
    CHECK(a.n0 == b.n0);
    CHECK(a.n1 == b.n1);
    CHECK(a.xi == b.xi);
    CHECK(a.xi_prime == b.xi_prime);
  }

  SUBCASE("synthetic pairs") {
    const HypothesisPair toy = HypothesisPair::synthetic(1.0, 2.0);
    CHECK(toy.n0 == 1.0);
    CHECK(toy.n1 == 2.0);
    CHECK(toy.tau == 0.0);
    CHECK_THROWS_AS(HypothesisPair::synthetic(2.0, 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("amplitude prior width") {
  const RadarScenario sc = wband_default_scenario();
  const double lambda = amplitude_prior_lambda(sc);
  // (2 lambda)^-1 = pulse energy / photon energy ~ 1.51e20 photons
  CHECK(1.0 / (2.0 * lambda) ==
        doctest::Approx(1.5091901805668616e20).epsilon(1e-12));
  CHECK(lambda > 0.0);

  RadarScenario doubled = sc;
  doubled.avg_power_w *= 2.0;
  CHECK(amplitude_prior_lambda(doubled) ==
        doctest::Approx(0.5 * lambda).epsilon(1e-15));
}
