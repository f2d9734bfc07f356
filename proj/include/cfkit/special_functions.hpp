#ifndef CFKIT_SPECIAL_FUNCTIONS_HPP
#define CFKIT_SPECIAL_FUNCTIONS_HPP

#include <stdexcept>

namespace cfkit {

/// Gamma function for x > 0.
///
/// Lanczos approximation evaluated in product form (no log/exp round trip),
/// with exact table lookup at integers <= 20. Relative error stays below
/// 1e-13 on (0, 170].
///
/// Throws std::domain_error for x <= 0 and std::overflow_error for x > 171.6.
double gamma(double x);

/// 1/Gamma(x) for any finite real x; exactly zero at the poles 0, -1, -2, ...
/// Negative non-integer arguments go through the reflection formula.
double reciprocal_gamma(double x);

/// Argument bundle for the one-parameter-family Mittag-Leffler function
/// E_{1,beta}(z) = sum_{k>=0} z^k / Gamma(k + beta).
struct MLArg {
  double beta;  // second parameter, > 0
  double z;     // argument; the derivative formulas only produce z <= 0

  MLArg(double beta_, double z_) : beta(beta_), z(z_) {
    if (!(beta > 0.0)) throw std::domain_error("MLArg: beta must be > 0");
    if (!(z == z) || z - z != 0.0) throw std::domain_error("MLArg: z must be finite");
  }
};

/// E_{1,beta}(z).
///
/// Defining series in double-double compensated arithmetic for z >= -35;
/// for z < -35 the algebraic asymptotic expansion
///   E_{1,beta}(-x) ~ sum_{j>=1} (-1)^{j+1} x^{-j} / Gamma(beta - j)
/// truncated at <= 10 terms (pole terms drop out, 1/Gamma = 0 there).
/// The series loses roughly |z|*log10(e) digits to cancellation for z < 0,
/// which is what fixes the switch point.
///
/// Accuracy: |err| <= 1e-10 * max(1, |E|) for |z| <= 200, beta in (0, 10].
double mittag_leffler_1(const MLArg& arg);

/// E_{1,m}(z) for integer m >= 1 via the closed form
///   E_{1,m}(z) = z^{-(m-1)} [ e^z - sum_{k=0}^{m-2} z^k/k! ].
/// For |z| < 2 the bracket cancels badly, so the tail series
/// sum_{j>=0} z^j/(j+m-1)! is summed directly instead.
double mittag_leffler_1_integer_beta(int m, double z);

}  // namespace cfkit

#endif
