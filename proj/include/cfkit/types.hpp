#ifndef CFKIT_TYPES_HPP
#define CFKIT_TYPES_HPP

#include <Eigen/Core>

#include <stdexcept>
#include <utility>

namespace cfkit {

/// Fractional order alpha in (0,1) together with the decay rate
/// lambda = alpha/(1-alpha) of the exponential memory kernel.
///
/// alpha is capped at 1 - 1e-8: lambda must stay finite, so the
/// classical limit alpha -> 1 is only ever approached, never evaluated.
struct FracOrder {
  double alpha;
  double lambda;

  explicit FracOrder(double a) : alpha(a), lambda(a / (1.0 - a)) {
    if (!(a > 0.0))
      throw std::domain_error("FracOrder: alpha must be > 0");
    if (!(a <= 1.0 - 1e-8))
      throw std::domain_error("FracOrder: alpha must be <= 1 - 1e-8 (lambda diverges as alpha -> 1)");
  }
};

/// Uniform time grid t_i = a + i*dt for i = 0..n (n intervals, n+1 nodes).
struct UniformGrid {
  double a;
  double dt;
  Eigen::Index n;

  UniformGrid(double a_, double dt_, Eigen::Index n_) : a(a_), dt(dt_), n(n_) {
    if (!(dt > 0.0)) throw std::invalid_argument("UniformGrid: dt must be > 0");
    if (n < 1) throw std::invalid_argument("UniformGrid: need at least one interval");
  }

  Eigen::Index node_count() const { return n + 1; }
  double node(Eigen::Index i) const { return a + static_cast<double>(i) * dt; }
  double b() const { return node(n); }

  Eigen::ArrayXd nodes() const {
    Eigen::ArrayXd t(node_count());
    for (Eigen::Index i = 0; i <= n; ++i) t[i] = node(i);
    return t;
  }
};

/// Function values on a uniform grid; the carrier of every numeric operator.
struct SampledFunction {
  UniformGrid grid;
  Eigen::ArrayXd values;

  SampledFunction(UniformGrid g, Eigen::ArrayXd v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.node_count())
      throw std::invalid_argument("SampledFunction: values length must equal node count");
    if (!values.isFinite().all())
      throw std::invalid_argument("SampledFunction: values must be finite");
  }
};

/// Sample a callable at every node of g.
template <class F>
SampledFunction sample(const UniformGrid& g, F&& f) {
  Eigen::ArrayXd v(g.node_count());
  for (Eigen::Index i = 0; i < g.node_count(); ++i) v[i] = f(g.node(i));
  return SampledFunction(g, std::move(v));
}

}  // namespace cfkit

#endif
