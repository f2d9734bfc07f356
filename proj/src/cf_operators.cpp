#include "cfkit/cf_operators.hpp"

#include <cmath>
#include <stdexcept>

namespace cfkit {

SampledFunction cf_derivative(const SampledFunction& f, const FracOrder& order) {
  const UniformGrid& g = f.grid;
  const double dt = g.dt;
  const double lam = order.lambda;
  const double decay = std::exp(-lam * dt);
  // (1 - e^{-lam dt})/lam via expm1: safe when lam*dt underflows
  const double w_slope = -std::expm1(-lam * dt) / lam;
  const double scale = 1.0 / (1.0 - order.alpha);

  Eigen::ArrayXd out(g.node_count());
  out[0] = 0.0;
  double k_state = 0.0;
  for (Eigen::Index j = 1; j <= g.n; ++j) {
    const double slope = (f.values[j] - f.values[j - 1]) / dt;
    k_state = decay * k_state + slope * w_slope;
    out[j] = scale * k_state;
  }
  return SampledFunction(g, std::move(out));
}

SampledFunction cf_integral(const SampledFunction& f, const FracOrder& order) {
  const UniformGrid& g = f.grid;
  const double one_minus_alpha = 1.0 - order.alpha;

  Eigen::ArrayXd out(g.node_count());
  out[0] = one_minus_alpha * f.values[0];
  double running = 0.0;
  for (Eigen::Index j = 1; j <= g.n; ++j) {
    running += 0.5 * g.dt * (f.values[j - 1] + f.values[j]);
    out[j] = one_minus_alpha * f.values[j] + order.alpha * running;
  }
  return SampledFunction(g, std::move(out));
}

namespace {

// Second-order first derivative: central stencil inside, one-sided at the ends.
Eigen::ArrayXd fd_derivative(const Eigen::ArrayXd& v, double dt) {
  const Eigen::Index n = v.size() - 1;
  Eigen::ArrayXd d(v.size());
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * dt);
  for (Eigen::Index i = 1; i < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * dt);
  d[n] = (3.0 * v[n] - 4.0 * v[n - 1] + v[n - 2]) / (2.0 * dt);
  return d;
}

}  // namespace

SampledFunction cf_derivative_higher(const SampledFunction& f, int n_whole,
                                     const FracOrder& order) {
  if (n_whole < 1)
    throw std::invalid_argument("cf_derivative_higher: n_whole must be >= 1");
  if (f.grid.node_count() < n_whole + 2 || f.grid.node_count() < 3)
    throw std::invalid_argument("cf_derivative_higher: grid too short for the stencil");

  Eigen::ArrayXd d = f.values;
  for (int k = 0; k < n_whole; ++k) d = fd_derivative(d, f.grid.dt);
  return cf_derivative(SampledFunction(f.grid, std::move(d)), order);
}

double translate_lower_limit(double d_full_t, double d_full_a,
                             const FracOrder& order, double t_minus_a) {
  if (!(t_minus_a >= 0.0))
    throw std::invalid_argument("translate_lower_limit: t - a must be >= 0");
  return d_full_t - std::exp(-order.lambda * t_minus_a) * d_full_a;
}

}  // namespace cfkit
