#ifndef CFKIT_ANALYTIC_CATALOG_HPP
#define CFKIT_ANALYTIC_CATALOG_HPP

#include "cfkit/types.hpp"

#include <variant>

namespace cfkit {

// Closed-form Caputo-Fabrizio derivatives for the classical families.
// Power and Monomial are taken in t - a; Exponential, Sine and Cosine are
// defined with lower limit 0 (shift any other lower limit with
// translate_lower_limit).

struct Power {
  double beta;  // (t-a)^beta, beta > 0
};
struct Monomial {
  int m;  // (t-a)^m, m >= 1
};
struct Exponential {
  double c;  // e^{ct}
};
struct Sine {};
struct Cosine {};
struct Constant {
  double c;
};

using CatalogFunction = std::variant<Power, Monomial, Exponential, Sine, Cosine, Constant>;

/// The function value itself, f(t).
double catalog_value(const CatalogFunction& fn, double a, double t);

/// Closed-form CF derivative of order alpha at t.
///
/// Power uses the Mittag-Leffler form
///   (beta/alpha) (t-a)^{beta-1} [1 - Gamma(beta) E_{1,beta}(-lambda (t-a))],
/// switching to power_series_form for beta < 1 near t = a where the
/// prefactor form is 0 * inf. Monomial always uses the explicit finite
/// formula. The derivative of every family is 0 at t = a.
double cf_derivative_closed(const CatalogFunction& fn, const FracOrder& order,
                            double a, double t);

/// Classical first derivative, the alpha -> 1 limit of the closed forms.
double classical_limit_derivative(const CatalogFunction& fn, double a, double t);

/// Rearranged series for the Power family with beta in (0,1):
///   (beta/alpha) Gamma(beta) lambda t^beta E_{1,beta+1}(-lambda t),
/// every term carries the positive exponent k + beta - 1, so the value
/// extends continuously by 0 at t = 0.
double power_series_form(double beta, const FracOrder& order, double t);

}  // namespace cfkit

#endif
