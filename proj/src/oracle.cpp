#include "cfkit/oracle.hpp"

#include <cmath>

namespace cfkit {

namespace {

// Integrand after the grading substitution tau = a + (t-a) u^gamma:
//   h(u) = f'(tau(u)) * exp(-lambda (t-a)(1 - u^gamma)) * gamma * u^{gamma-1},
// integrated over u in [0,1] and scaled by (t-a)/(1-alpha).
struct GradedIntegrand {
  const OracleSpec& spec;
  double width;  // t - a

  double operator()(double u) const {
    const double ug = std::pow(u, spec.grading_exponent);
    const double tau = spec.a + width * ug;
    const double kernel = std::exp(-spec.order.lambda * width * (1.0 - ug));
    return spec.f_prime(tau) * kernel * spec.grading_exponent *
           std::pow(u, spec.grading_exponent - 1.0);
  }
};

double simpson(const GradedIntegrand& h, int panels, double grading) {
  const double du = 1.0 / panels;
  // For graded meshes f' may blow up at tau = a while the u^{gamma-1}
  // weight vanishes; a 2^-30 inset evaluates the limit instead of 0 * inf.
  const double u0 = grading > 1.0 ? std::ldexp(1.0, -30) : 0.0;
  double sum = h(u0) + h(1.0);
  for (int j = 1; j < panels; ++j) sum += (j & 1 ? 4.0 : 2.0) * h(j * du);
  return sum * du / 3.0;
}

}  // namespace

double oracle_cf_derivative(const OracleSpec& spec) {
  if (spec.panels < 16 || (spec.panels & (spec.panels - 1)) != 0)
    throw std::invalid_argument("oracle: panels must be a power of two >= 16");
  if (!(spec.grading_exponent >= 1.0))
    throw std::invalid_argument("oracle: grading_exponent must be >= 1");
  if (!(spec.t >= spec.a)) throw std::invalid_argument("oracle: t must be >= a");
  if (spec.t == spec.a) return 0.0;

  const double width = spec.t - spec.a;
  const double scale = width / (1.0 - spec.order.alpha);
  const GradedIntegrand h{spec, width};

  double prev = scale * simpson(h, spec.panels, spec.grading_exponent);
  for (int p = 2 * spec.panels; p <= (1 << 20); p *= 2) {
    const double cur = scale * simpson(h, p, spec.grading_exponent);
    if (std::abs(cur - prev) <= 1e-10 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw OracleDivergence(
      "oracle: Simpson doubling did not settle within 2^20 panels; "
      "increase grading_exponent for singular integrands");
}

double oracle_shifted(const OracleSpec& spec) { return oracle_cf_derivative(spec); }

}  // namespace cfkit
