#ifndef CFKIT_ORACLE_HPP
#define CFKIT_ORACLE_HPP

#include "cfkit/types.hpp"

#include <functional>
#include <stdexcept>

namespace cfkit {

/// Raised when panel doubling fails to settle within 2^20 panels —
/// usually a singular integrand that needs a larger grading exponent.
class OracleDivergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brute-force evaluation of the defining kernel integral at one point.
/// Deliberately slow: this is the ground truth the fast paths are checked
/// against, never a production path.
struct OracleSpec {
  std::function<double(double)> f_prime;  // derivative factor of the integrand
  double a;
  double t;
  FracOrder order;
  int panels = 16;                // starting panel count, power of two >= 16
  double grading_exponent = 1.0;  // mesh nodes tau_j = a + (t-a)(j/p)^gamma
};

/// Composite Simpson of (1/(1-alpha)) f'(tau) e^{-lambda (t-tau)} over the
/// graded mesh, doubling panels until one doubling changes the result by
/// no more than 1e-10 * max(1, |result|).
double oracle_cf_derivative(const OracleSpec& spec);

/// Same quadrature with a nonzero lower limit; the check target for the
/// translation formula.
double oracle_shifted(const OracleSpec& spec);

}  // namespace cfkit

#endif
