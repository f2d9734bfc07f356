#include "cfkit/special_functions.hpp"

#include "testutil.hpp"

#include <doctest.h>

#include <cmath>

using namespace cfkit;

namespace {
double ml(double beta, double z) { return mittag_leffler_1(MLArg(beta, z)); }
}

TEST_CASE("gamma: exact and frozen values") {
  CHECK(cfkit::gamma(1.0) == 1.0);
  CHECK(cfkit::gamma(5.0) == 24.0);
  CHECK(cfkit::gamma(20.0) == 121645100408832000.0);
  CHECK(cfkit::gamma(0.5) == doctest::Approx(1.7724538509055160273).epsilon(1e-14));
  // reference values from a 40-digit evaluation
  CHECK(cfkit::gamma(0.1) == doctest::Approx(9.5135076986687312858).epsilon(1e-13));
  CHECK(cfkit::gamma(2.5) == doctest::Approx(1.3293403881791370205).epsilon(1e-13));
  CHECK(cfkit::gamma(7.77) == doctest::Approx(3181.5435309890249450).epsilon(1e-13));
  CHECK(cfkit::gamma(33.3) == doctest::Approx(7.4875775965226323274e+35).epsilon(1e-13));
  CHECK(cfkit::gamma(170.5) == doctest::Approx(5.5620924145599996107e+305).epsilon(1e-13));
  CHECK(cfkit::gamma(1e-4) == doctest::Approx(9999.4228832316237116).epsilon(1e-13));
  CHECK(cfkit::gamma(150.1234) == doctest::Approx(7.0660236496571235807e+260).epsilon(1e-13));
}

TEST_CASE("gamma: domain and overflow errors") {
  CHECK_THROWS_AS(cfkit::gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(cfkit::gamma(-3.0), std::domain_error);
  CHECK_THROWS_AS(cfkit::gamma(172.0), std::overflow_error);
}

TEST_CASE("gamma: sweep against libm") {
  double worst = 0.0;
  for (double x = 0.013; x <= 170.0; x += 0.0917)
    worst = std::max(worst, std::abs(cfkit::gamma(x) - std::tgamma(x)) / std::tgamma(x));
  CHECK(worst <= 1e-13);
}

TEST_CASE("reciprocal_gamma: poles and reflection") {
  CHECK(reciprocal_gamma(0.0) == 0.0);
  CHECK(reciprocal_gamma(-1.0) == 0.0);
  CHECK(reciprocal_gamma(-7.0) == 0.0);
  CHECK(reciprocal_gamma(2.0) == doctest::Approx(1.0));
  // Gamma(-0.5) = -2 sqrt(pi)
  CHECK(reciprocal_gamma(-0.5) ==
        doctest::Approx(-1.0 / (2.0 * 1.7724538509055160273)).epsilon(1e-13));
  CHECK(reciprocal_gamma(200.0) == 0.0);
}

TEST_CASE("mittag_leffler_1: closed-form anchors") {
  CHECK(ml(1.0, 1.0) == doctest::Approx(2.718281828459045235).epsilon(1e-14));
  CHECK(ml(3.0, 0.0) == 0.5);
  // E_{1,2}(z) = (e^z - 1)/z
  CHECK(ml(2.0, -50.0) == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(ml(2.0, -150.0) == doctest::Approx(1.0 / 150.0).epsilon(1e-11));
}

TEST_CASE("mittag_leffler_1: frozen extended-precision values") {
  struct Row {
    double beta, z, want, abs_tol;
  };
  // series regime (tight) and asymptotic regime (the documented 1e-10 budget)
  const Row rows[] = {
      {0.25, -1.0, -0.24015864390370033445, 1e-13},
      {0.5, -20.0, -0.015325407164895395749, 1e-13},
      {1.7, -10.0, 0.079759829312487715474, 1e-13},
      {4.2, 7.3, 2.4805023879458184901, 1e-12},
      {0.25, 10.0, 123863.93744646672503, 1e-7},
      {9.5, -30.0, 1.8895600964194544371e-6, 1e-15},
      {0.3, -33.0, -0.0074897280615005330027, 1e-11},
      {0.5, -34.9, -0.0084581159362986448538, 1e-12},
      {0.25, -0.05, 0.22281076724775789969, 1e-14},
      {0.5, -35.1, -0.0084076208753012714444, 1e-10},
      {0.25, -200.0, -0.0010434857676386449765, 1e-10},
      {0.5, -50.0, -0.0058202680349559122325, 1e-10},
      {0.5, -100.0, -0.0028643587811196539028, 1e-10},
      {2.5, -75.0, 0.014944072680415224293, 1e-10},
      {7.5, -120.0, 0.000027668322288309975716, 1e-10},
      {0.9, -35.5, -0.0027229860312372969753, 1e-10},
      {3.3, -36.0, 0.022956156655954447192, 1e-10},
      {6.7, -40.0, 0.00030769848800657755950, 1e-10},
      {10.0, -200.0, 1.1921614946823732019e-7, 1e-10},
      {0.1, -35.2, -0.0028461325985149580155, 1e-10},
      {1.0, -150.0, 7.1750961694387445862e-66, 1e-11},
  };
  for (const Row& r : rows) {
    CAPTURE(r.beta);
    CAPTURE(r.z);
    CHECK(std::abs(ml(r.beta, r.z) - r.want) <= r.abs_tol);
  }
}

TEST_CASE("mittag_leffler_1: E_{1,1} is exp on [-200, 20]") {
  for (int i = 0; i < 64; ++i) {
    const double z = -200.0 + i * (220.0 / 63.0);
    const double want = std::exp(z);
    CAPTURE(z);
    CHECK(std::abs(ml(1.0, z) - want) <= 1e-12 * std::max(1.0, want));
  }
}

TEST_CASE("mittag_leffler_1: monotone vanishing of E_{1,beta}(-x)") {
  for (double beta : {0.5, 1.0, 2.0, 4.0}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double x : {10.0, 50.0, 100.0, 200.0}) {
      const double v = std::abs(ml(beta, -x));
      CAPTURE(beta);
      CAPTURE(x);
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("mittag_leffler_1: series consistency in the direct regime") {
  // the long-double brute-force series is an independent oracle up to the
  // cancellation wall (~|z| = 18); frozen constants cover deeper arguments
  for (double beta : {0.25, 0.5, 1.0, 1.5, 2.0, 3.7, 7.5}) {
    for (double z = -18.0; z <= 20.0; z += 1.37) {
      const double want = testutil::ml_series_reference(beta, z);
      CAPTURE(beta);
      CAPTURE(z);
      CHECK(std::abs(ml(beta, z) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("mittag_leffler_1: argument validation") {
  CHECK_THROWS_AS(MLArg(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(MLArg(-2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(MLArg(1.0, std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("mittag_leffler_1_integer_beta: anchors and closed forms") {
  CHECK(mittag_leffler_1_integer_beta(1, 2.0) ==
        doctest::Approx(7.3890560989306502272).epsilon(1e-14));
  CHECK(mittag_leffler_1_integer_beta(2, 1.0) ==
        doctest::Approx(1.7182818284590452354).epsilon(1e-14));
  CHECK(mittag_leffler_1_integer_beta(4, -3.0) ==
        doctest::Approx(0.090748627097486520630).epsilon(1e-12));
  CHECK(mittag_leffler_1_integer_beta(3, 0.0) == 0.5);
  CHECK_THROWS_AS(mittag_leffler_1_integer_beta(0, 1.0), std::domain_error);
}

TEST_CASE("mittag_leffler_1_integer_beta: agrees with the general path") {
  for (int m = 1; m <= 8; ++m) {
    for (double z = -30.0; z <= 10.0001; z += 0.73) {
      const double a = mittag_leffler_1_integer_beta(m, z);
      const double b = ml(static_cast<double>(m), z);
      CAPTURE(m);
      CAPTURE(z);
      CHECK(std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)}));
    }
  }
}
