#include "cfkit/analytic_catalog.hpp"

#include "cfkit/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace cfkit {

namespace {

void require_zero_lower_limit(double a, const char* family) {
  if (a != 0.0)
    throw std::invalid_argument(std::string(family) +
                                ": closed form is for lower limit 0; compose nonzero "
                                "lower limits with translate_lower_limit");
}

double power_closed(const Power& p, const FracOrder& order, double tma) {
  if (!(p.beta > 0.0)) throw std::invalid_argument("Power: beta must be > 0");
  if (tma == 0.0) return 0.0;  // every series exponent k + beta - 1 > 0
  const double x = order.lambda * tma;
  if (p.beta < 1.0 && x < 0.1) return power_series_form(p.beta, order, tma);
  const double bracket = 1.0 - gamma(p.beta) * mittag_leffler_1(MLArg(p.beta, -x));
  return (p.beta / order.alpha) * std::pow(tma, p.beta - 1.0) * bracket;
}

double monomial_closed(const Monomial& mono, const FracOrder& order, double tma) {
  if (mono.m < 1) throw std::invalid_argument("Monomial: m must be >= 1");
  const int m = mono.m;
  const double alpha = order.alpha;
  const double q = -(1.0 - alpha) / alpha;
  const double m_fact = gamma(static_cast<double>(m) + 1.0);

  double value = (m / alpha) * std::pow(tma, m - 1);
  // memory term: (m!/alpha) sum_{k=0}^{m-2} q^{m-k-1} (t-a)^k / k!
  double tk = 1.0;  // (t-a)^k / k!
  for (int k = 0; k <= m - 2; ++k) {
    value += (m_fact / alpha) * std::pow(q, m - k - 1) * tk;
    tk *= tma / (k + 1);
  }
  // exponential perturbation
  value -= (m_fact / alpha) * std::pow(q, m - 1) * std::exp(-order.lambda * tma);
  return value;
}

double exponential_closed(const Exponential& e, const FracOrder& order, double t) {
  const double lam = order.lambda;
  const double s = e.c + lam;  // zero exactly when c(1-alpha) + alpha = 0
  if (s == 0.0) return (e.c * t / (1.0 - order.alpha)) * std::exp(-lam * t);
  // c/(c(1-alpha)+alpha) [e^{ct} - e^{-lam t}] rewritten through expm1 so the
  // two branches join continuously as s -> 0
  return (e.c / (1.0 - order.alpha)) * std::exp(-lam * t) * std::expm1(s * t) / s;
}

}  // namespace

double catalog_value(const CatalogFunction& fn, double a, double t) {
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Power>) return std::pow(t - a, f.beta);
        if constexpr (std::is_same_v<T, Monomial>) return std::pow(t - a, f.m);
        if constexpr (std::is_same_v<T, Exponential>) return std::exp(f.c * t);
        if constexpr (std::is_same_v<T, Sine>) return std::sin(t);
        if constexpr (std::is_same_v<T, Cosine>) return std::cos(t);
        if constexpr (std::is_same_v<T, Constant>) return f.c;
      },
      fn);
}

double cf_derivative_closed(const CatalogFunction& fn, const FracOrder& order,
                            double a, double t) {
  if (!(t >= a)) throw std::invalid_argument("cf_derivative_closed: t must be >= a");
  const double alpha = order.alpha;
  const double lam = order.lambda;
  const double denom = (1.0 - alpha) * (1.0 - alpha) + alpha * alpha;

  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Power>) {
          return power_closed(f, order, t - a);
        }
        if constexpr (std::is_same_v<T, Monomial>) {
          return monomial_closed(f, order, t - a);
        }
        if constexpr (std::is_same_v<T, Exponential>) {
          require_zero_lower_limit(a, "Exponential");
          return exponential_closed(f, order, t);
        }
        if constexpr (std::is_same_v<T, Sine>) {
          require_zero_lower_limit(a, "Sine");
          return (alpha * std::cos(t) + (1.0 - alpha) * std::sin(t) -
                  alpha * std::exp(-lam * t)) /
                 denom;
        }
        if constexpr (std::is_same_v<T, Cosine>) {
          require_zero_lower_limit(a, "Cosine");
          return (-alpha * std::sin(t) +
                  (1.0 - alpha) * (std::cos(t) - std::exp(-lam * t))) /
                 denom;
        }
        if constexpr (std::is_same_v<T, Constant>) {
          (void)f;
          return 0.0;
        }
      },
      fn);
}

double classical_limit_derivative(const CatalogFunction& fn, double a, double t) {
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Power>) {
          if (!(f.beta > 0.0)) throw std::invalid_argument("Power: beta must be > 0");
          if (f.beta < 1.0 && t == a)
            throw std::domain_error(
                "classical_limit_derivative: (t-a)^beta with beta < 1 is singular at t = a");
          return f.beta * std::pow(t - a, f.beta - 1.0);
        }
        if constexpr (std::is_same_v<T, Monomial>) return f.m * std::pow(t - a, f.m - 1);
        if constexpr (std::is_same_v<T, Exponential>) return f.c * std::exp(f.c * t);
        if constexpr (std::is_same_v<T, Sine>) return std::cos(t);
        if constexpr (std::is_same_v<T, Cosine>) return -std::sin(t);
        if constexpr (std::is_same_v<T, Constant>) {
          (void)f;
          return 0.0;
        }
      },
      fn);
}

double power_series_form(double beta, const FracOrder& order, double t) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("power_series_form: beta must be in (0,1)");
  if (!(t >= 0.0)) throw std::invalid_argument("power_series_form: t must be >= 0");
  if (t == 0.0) return 0.0;
  const double x = order.lambda * t;
  return (beta / order.alpha) * gamma(beta) * order.lambda * std::pow(t, beta) *
         mittag_leffler_1(MLArg(beta + 1.0, -x));
}

}  // namespace cfkit
