#ifndef CFKIT_TESTS_TESTUTIL_HPP
#define CFKIT_TESTS_TESTUTIL_HPP

#include "cfkit/types.hpp"

#include <cmath>
#include <functional>

namespace cfkit::testutil {

// Brute-force Mittag-Leffler series in long double, fixed 400 terms, plain
// forward summation. Independent of the library's evaluation path (different
// arithmetic, no truncation rule). Trustworthy for |z| <= 18, where the
// 64-bit-significand roundoff on the ~e^{|z|} peak terms stays below ~1e-11;
// deeper arguments are covered by frozen extended-precision constants.
inline double ml_series_reference(double beta, double z) {
  long double sum = 0.0L;
  long double term_top = 1.0L;  // z^k
  for (int k = 0; k < 400; ++k) {
    sum += term_top / std::tgammal(static_cast<long double>(k) + static_cast<long double>(beta));
    term_top *= static_cast<long double>(z);
  }
  return static_cast<double>(sum);
}

inline SampledFunction sample_fn(double a, double b, double dt,
                                 const std::function<double(double)>& f) {
  const auto n = static_cast<Eigen::Index>(std::llround((b - a) / dt));
  return sample(UniformGrid(a, dt, n), f);
}

inline double max_err_vs(const SampledFunction& got,
                         const std::function<double(double)>& want) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < got.grid.node_count(); ++i)
    worst = std::max(worst, std::abs(got.values[i] - want(got.grid.node(i))));
  return worst;
}

}  // namespace cfkit::testutil

#endif
