#include "cfkit/oracle.hpp"

#include "cfkit/analytic_catalog.hpp"
#include "cfkit/cf_operators.hpp"

#include <doctest.h>

#include <cmath>

using namespace cfkit;

TEST_CASE("oracle: trivial integrands") {
  const FracOrder half(0.5);
  OracleSpec zero{[](double) { return 0.0; }, 0.0, 2.0, half};
  CHECK(oracle_cf_derivative(zero) == 0.0);

  OracleSpec empty{[](double) { return 1.0; }, 1.5, 1.5, half};
  CHECK(oracle_shifted(empty) == 0.0);
}

TEST_CASE("oracle: exponential against the closed antiderivative") {
  OracleSpec spec{[](double tau) { return std::exp(tau); }, 0.0, 1.0, FracOrder(0.5)};
  CHECK(std::abs(oracle_cf_derivative(spec) - 2.3504023872876029138) <= 1e-10);
}

TEST_CASE("oracle: graded mesh handles the sqrt singularity") {
  const FracOrder half(0.5);
  auto fp = [](double tau) { return 0.5 * std::pow(tau, -0.5); };
  for (double grading : {2.0, 4.0}) {
    OracleSpec spec{fp, 0.0, 1.0, half, 16, grading};
    const double got = oracle_cf_derivative(spec);
    const double want = cf_derivative_closed(Power{0.5}, half, 0.0, 1.0);
    CAPTURE(grading);
    CHECK(std::abs(got - want) <= 1e-8);
  }
}

TEST_CASE("oracle: shifted lower limit against the translation formula") {
  const FracOrder half(0.5);
  const CatalogFunction fn = Exponential{1.0};
  const double d_a = cf_derivative_closed(fn, half, 0.0, 1.0);
  for (double t : {1.5, 2.0, 3.0}) {
    OracleSpec spec{[](double tau) { return std::exp(tau); }, 1.0, t, half};
    const double want = translate_lower_limit(cf_derivative_closed(fn, half, 0.0, t), d_a,
                                              half, t - 1.0);
    CAPTURE(t);
    CHECK(std::abs(oracle_shifted(spec) - want) <= 1e-8);
  }
  // closed evaluation of the shifted integral at t = 2: e^2 - 1
  OracleSpec two{[](double tau) { return std::exp(tau); }, 1.0, 2.0, half};
  CHECK(oracle_shifted(two) == doctest::Approx(6.3890560989306502272).epsilon(1e-10));
}

TEST_CASE("oracle: spec validation") {
  const FracOrder half(0.5);
  auto fp = [](double) { return 1.0; };
  CHECK_THROWS_AS(oracle_cf_derivative({fp, 0.0, 1.0, half, 8, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(oracle_cf_derivative({fp, 0.0, 1.0, half, 48, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(oracle_cf_derivative({fp, 0.0, 1.0, half, 16, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(oracle_cf_derivative({fp, 1.0, 0.5, half, 16, 1.0}), std::invalid_argument);
}

TEST_CASE("oracle: divergence on an undergraded singular integrand") {
  // tau^{-0.9} needs heavy grading; a uniform mesh cannot reach 1e-10
  OracleSpec spec{[](double tau) { return std::pow(tau, -0.9); }, 0.0, 1.0, FracOrder(0.5),
                  16, 1.0};
  CHECK_THROWS_AS(oracle_cf_derivative(spec), OracleDivergence);
}
