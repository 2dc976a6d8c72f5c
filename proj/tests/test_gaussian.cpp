#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "spoofsim/gaussian.hpp"

using namespace spoofsim;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Random valid Gaussian state: arbitrary displacement, covariance
// R(theta) diag(1+a, 1+b) R(theta)^T with a, b >= 0.
GaussianState random_state(Rng& rng) {
  GaussianState s;
  s.displacement = {20.0 * (rng.uniform() - 0.5), 20.0 * (rng.uniform() - 0.5)};
  const double a = 1.0 + 4.0 * rng.uniform();
  const double b = 1.0 + 4.0 * rng.uniform();
  const double theta = 2.0 * kPi * rng.uniform();
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  s.covariance.xx = c * c * a + sn * sn * b;
  s.covariance.yy = sn * sn * a + c * c * b;
  s.covariance.xy = c * sn * (a - b);
  return s;
}

// Nodes and weights of n-point Gauss-Legendre on [-1, 1] (Newton on the
// Legendre recurrence).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p0 = 0.0;
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
      }
      dp = n * (t * p0 - p1) / (t * t - 1.0);
      const double dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) {
        break;
      }
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

// Tensor quadrature of the pdf over a square spanning 12 standard scales
// around the centroid; the mass outside is below exp(-144).
double pdf_mass(const GaussianState& state) {
  const double scale = std::sqrt(thermal_photon_number(state) + 1.0);
  const complexd c = state.centroid();
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(96, x, w);
  const double half = 12.0 * scale;
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      const complexd beta{c.real() + half * x[i], c.imag() + half * x[j]};
      total += w[i] * w[j] * heterodyne_pdf(state, beta);
    }
  }
  return total * half * half;
}

} // namespace

TEST_CASE("coherent state displacement convention") {
  const GaussianState vac = coherent_state({0.0, 0.0});
  CHECK(vac.displacement.x == 0.0);
  CHECK(vac.displacement.y == 0.0);
  CHECK(vac.covariance.xx == 1.0);
  CHECK(vac.covariance.xy == 0.0);
  CHECK(vac.covariance.yy == 1.0);

  const GaussianState one = coherent_state({1.0, 0.0});
  CHECK(one.displacement.x == 2.0);
  CHECK(one.displacement.y == 0.0);

  const GaussianState mixed = coherent_state({0.3, -0.4});
  CHECK(mixed.displacement.x == doctest::Approx(0.6));
  CHECK(mixed.displacement.y == doctest::Approx(-0.8));
  CHECK(mixed.covariance.xx == 1.0);

  CHECK(mixed.centroid().real() == doctest::Approx(0.3));
  CHECK(mixed.centroid().imag() == doctest::Approx(-0.4));

  const double nan = std::nan("");
  CHECK_THROWS_AS(coherent_state({nan, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(coherent_state({0.0, INFINITY}), std::invalid_argument);
}

TEST_CASE("lossy channel transform") {
  SUBCASE("lossless noiseless is the identity") {
    const GaussianState in = coherent_state({0.7, -0.2});
    const GaussianState out = apply_lossy_channel(in, {1.0, 0.0});
    CHECK(out.displacement.x == in.displacement.x);
    CHECK(out.covariance.xx == in.covariance.xx);
  }

  SUBCASE("vacuum through a thermal channel") {
    // tau V + (2 n' + 1 - tau) I on V = I gives (2 n' + 1) I for any tau
    for (double tau : {0.1, 0.25, 0.9}) {
      const GaussianState out =
          apply_lossy_channel(coherent_state({0.0, 0.0}), {tau, 32.0});
      CHECK(out.covariance.xx == doctest::Approx(65.0).epsilon(1e-14));
      CHECK(out.covariance.yy == doctest::Approx(65.0).epsilon(1e-14));
      CHECK(out.covariance.xy == 0.0);
      CHECK(out.displacement.x == 0.0);
    }
  }

  SUBCASE("pure loss keeps coherent states coherent") {
    const GaussianState out =
        apply_lossy_channel(coherent_state({1.0, 0.0}), {0.25, 0.0});
    CHECK(out.displacement.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(out.displacement.y == 0.0);
    CHECK(out.covariance.xx == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(out.covariance.yy == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("parameter validation") {
    const GaussianState vac = coherent_state({0.0, 0.0});
    CHECK_THROWS_AS(apply_lossy_channel(vac, {0.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_lossy_channel(vac, {1.2, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_lossy_channel(vac, {0.5, -1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_lossy_channel(vac, {1.0, 2.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("classical noise transform") {
  const GaussianState in = coherent_state({0.5, 0.5});
  const GaussianState same = apply_classical_noise(in, {0.0});
  CHECK(same.covariance.xx == 1.0);

  const GaussianState noisy = apply_classical_noise(in, {2.0});
  CHECK(noisy.covariance.xx == 3.0);
  CHECK(noisy.covariance.yy == 3.0);
  CHECK(noisy.displacement.x == in.displacement.x);

  // channel chain reproduces N0 bookkeeping: (2(32+0.01)+1) I
  GaussianState chained = apply_lossy_channel(coherent_state({1.0, 0.0}),
                                              {0.25, 32.0});
  chained = apply_classical_noise(chained, {0.02});
  CHECK(chained.covariance.xx == doctest::Approx(65.02).epsilon(1e-14));

  CHECK_THROWS_AS(apply_classical_noise(in, {-0.1}), std::invalid_argument);
}

TEST_CASE("two shared-occupation legs compose to the full channel") {
  Rng rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const GaussianState state = random_state(rng);
    const double tau = 1e-12 + rng.uniform() * (1.0 - 2e-12);
    const double ntp = 64.0 * rng.uniform();

    const LossyChannelParams leg = leg_channel(tau, ntp);
    const GaussianState two_leg =
        apply_lossy_channel(apply_lossy_channel(state, leg), leg);
    const GaussianState direct = apply_lossy_channel(state, {tau, ntp});

    worst = std::max(worst, std::abs(two_leg.displacement.x -
                                     direct.displacement.x));
    worst = std::max(worst, std::abs(two_leg.displacement.y -
                                     direct.displacement.y));
    worst = std::max(worst, std::abs(two_leg.covariance.xx -
                                     direct.covariance.xx));
    worst = std::max(worst, std::abs(two_leg.covariance.xy -
                                     direct.covariance.xy));
    worst = std::max(worst, std::abs(two_leg.covariance.yy -
                                     direct.covariance.yy));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("channels preserve symmetry and the vacuum floor") {
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const GaussianState state = random_state(rng);
    const double tau = 1e-9 + rng.uniform() * (1.0 - 2e-9);
    const double ntp = 100.0 * rng.uniform();
    const double xi = 10.0 * rng.uniform();

    const GaussianState lossy = apply_lossy_channel(state, {tau, ntp});
    CHECK(lossy.covariance.min_eigenvalue() >= 1.0 - 1e-12);

    const GaussianState noisy = apply_classical_noise(state, {xi});
    CHECK(noisy.covariance.min_eigenvalue() >= 1.0 - 1e-12);
  }
}

TEST_CASE("heterodyne pdf values and normalization") {
  const GaussianState vac = coherent_state({0.0, 0.0});
  CHECK(heterodyne_pdf(vac, {0.0, 0.0}) == doctest::Approx(1.0 / kPi));

  GaussianState thermal = coherent_state({0.0, 0.0});
  thermal.covariance = {2.0 * 32.0103 + 1.0, 0.0, 2.0 * 32.0103 + 1.0};
  CHECK(heterodyne_pdf(thermal, thermal.centroid()) ==
        doctest::Approx(1.0 / (kPi * 33.0103)).epsilon(1e-12));

  SUBCASE("anisotropy is rejected") {
    GaussianState squeezedish = vac;
    squeezedish.covariance = {3.0, 0.0, 2.0};
    CHECK_THROWS_AS(heterodyne_pdf(squeezedish, {0.0, 0.0}),
                    std::invalid_argument);
    squeezedish.covariance = {3.0, 0.5, 3.0};
    CHECK_THROWS_AS(heterodyne_pdf(squeezedish, {0.0, 0.0}),
                    std::invalid_argument);
  }

  SUBCASE("quadrature mass is 1") {
    CHECK(pdf_mass(vac) == doctest::Approx(1.0).epsilon(1e-9));

    GaussianState displaced = coherent_state({2.0, -1.0});
    displaced.covariance = {7.0, 0.0, 7.0}; // N = 3
    CHECK(pdf_mass(displaced) == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(pdf_mass(thermal) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("heterodyne sampling statistics") {
  // 1e6 draws; all comparisons at 4 standard errors
  const long n = 1000000;

  SUBCASE("vacuum moments") {
    const GaussianState vac = coherent_state({0.0, 0.0});
    Rng rng(7);
    double sx = 0.0;
    double sy = 0.0;
    double s2 = 0.0;
    for (long i = 0; i < n; ++i) {
      const complexd b = sample_heterodyne(vac, rng);
      sx += b.real();
      sy += b.imag();
      s2 += std::norm(b);
    }
    const double mean_se = std::sqrt(0.5 / n);   // each quadrature var 1/2
    CHECK(std::abs(sx / n) < 4.0 * mean_se);
    CHECK(std::abs(sy / n) < 4.0 * mean_se);
    const double power_se = 1.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(s2 / n - 1.0) < 4.0 * power_se);
  }

  SUBCASE("thermal quadrature variances") {
    GaussianState st = coherent_state({2.0, 0.0});
    st.covariance = {7.0, 0.0, 7.0}; // N = 3, per-quadrature variance 2
    Rng rng(8);
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (long i = 0; i < n; ++i) {
      const complexd b = sample_heterodyne(st, rng);
      const double dx = b.real() - 2.0;
      const double dy = b.imag();
      sx += dx;
      sy += dy;
      sxx += dx * dx;
      syy += dy * dy;
    }
    // variance estimator of a normal: se ~ var sqrt(2/n)
    const double var_se = 2.0 * std::sqrt(2.0 / n);
    CHECK(std::abs(sxx / n - 2.0) < 4.0 * var_se);
    CHECK(std::abs(syy / n - 2.0) < 4.0 * var_se);
    const double mean_se = std::sqrt(2.0 / n);
    CHECK(std::abs(sx / n) < 4.0 * mean_se);
    CHECK(std::abs(sy / n) < 4.0 * mean_se);
  }

  SUBCASE("fixed seed reproduces the draw sequence") {
    const GaussianState vac = coherent_state({0.0, 0.0});
    Rng a(123);
    Rng b(123);
    for (int i = 0; i < 100; ++i) {
      const complexd da = sample_heterodyne(vac, a);
      const complexd db = sample_heterodyne(vac, b);
      CHECK(da.real() == db.real());
      CHECK(da.imag() == db.imag());
    }
    Rng c(124);
    CHECK(sample_heterodyne(vac, c) != sample_heterodyne(vac, a));
  }
}
