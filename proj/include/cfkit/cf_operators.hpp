#ifndef CFKIT_CF_OPERATORS_HPP
#define CFKIT_CF_OPERATORS_HPP

#include "cfkit/types.hpp"

namespace cfkit {

/// Caputo-Fabrizio derivative of order alpha on a uniform grid:
///   (1/(1-alpha)) * integral_a^t f'(tau) exp(-lambda (t - tau)) dtau.
///
/// f is reconstructed piecewise-linearly, so f' is piecewise constant and
/// each panel integrates the kernel exactly; the remaining error is the
/// O(dt^2) reconstruction error. The whole trace costs O(n) through the
/// one-state recurrence
///   K_{j+1} = e^{-lambda dt} K_j + slope_j * (1 - e^{-lambda dt})/lambda.
/// The value at the first node is exactly zero.
SampledFunction cf_derivative(const SampledFunction& f, const FracOrder& order);

/// Caputo-Fabrizio integral: (1-alpha) f(t) + alpha * integral_a^t f,
/// with the running integral by the composite trapezoid rule (exact for
/// the same piecewise-linear reconstruction the derivative uses).
SampledFunction cf_integral(const SampledFunction& f, const FracOrder& order);

/// Derivative of order n_whole + alpha: an n-th finite-difference
/// derivative (second order, one-sided at the ends) followed by
/// cf_derivative.
SampledFunction cf_derivative_higher(const SampledFunction& f, int n_whole,
                                     const FracOrder& order);

/// Translation of the lower limit from 0 to a:
///   D_a g(t) = D_0 g(t) - exp(-lambda (t-a)) * D_0 g(a).
double translate_lower_limit(double d_full_t, double d_full_a,
                             const FracOrder& order, double t_minus_a);

}  // namespace cfkit

#endif
