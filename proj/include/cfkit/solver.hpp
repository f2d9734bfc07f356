#ifndef CFKIT_SOLVER_HPP
#define CFKIT_SOLVER_HPP

#include "cfkit/types.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace cfkit {

/// The hypothesis L < 1/(1-alpha) fails, or a requested horizon does not
/// fit inside the contraction window.
class WindowViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Picard iteration hit the iteration cap: the Lipschitz constant was
/// probably underestimated, or the tolerance is below reach.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// phi(a, a0) != 0. Every CF derivative vanishes at its lower limit, so a
/// right-hand side that is nonzero there admits no solution; enable
/// auto_correct to solve the corrected equation instead.
class CompatibilityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Initial value problem  D^alpha f(t) = phi(t, f(t)),  f(a) = a0,
/// with phi Lipschitz in its second argument with constant L.
struct IVP {
  std::function<double(double, double)> rhs;  // phi(t, x)
  double a = 0.0;
  double a0 = 0.0;
  double lipschitz = 0.0;
  FracOrder order;
};

struct SolverConfig {
  double dt_grid;                  // inner quadrature step; must divide the horizon
  double segment_fraction = 0.5;   // fraction of the contraction window per segment
  double picard_tol = 1e-12;       // sup-norm fixed-point tolerance
  int max_picard_iters = 200;
  double compat_tol = 1e-12;       // slack granted on phi(a, a0) = 0
  bool auto_correct = false;       // subtract e^{-lambda(t-a)} phi(a,a0) when violated
};

/// A computed solution plus per-segment diagnostics.
struct Trajectory {
  UniformGrid grid;
  Eigen::ArrayXd values;
  std::vector<double> segment_boundaries;  // interior joins T_1 < T_2 < ...
  std::vector<int> picard_iters;           // per segment
  std::vector<double> initial_changes;     // sup |f1 - f0| per segment
  double max_residual = 0.0;         // max_t |D^alpha f - phi(t, f)| a posteriori
  double max_contraction_ratio = 0.0;  // worst observed sup-change ratio
  bool corrected = false;            // auto_correct rewrote the equation
  double correction_value = 0.0;     // the phi(a, a0) that was subtracted
};

/// Length of the interval on which the Picard map contracts:
/// (1 - (1-alpha) L) / (alpha L); +infinity for L = 0. Throws
/// WindowViolation when L >= 1/(1-alpha).
double contraction_window(const FracOrder& order, double lipschitz);

/// Fixed point of  f = a0 + (1-alpha) phi(t,f) + alpha * integral phi  on
/// [a, T], iterated from the constant guess f = a0. Requires T - a inside
/// the contraction window and phi(a, a0) = 0 (up to compat_tol).
Trajectory solve_local(const IVP& ivp, double T, const SolverConfig& cfg);

/// Global solve on [a, t_end]: chains local solves on segments of length
/// segment_fraction * window; each new segment k restarts from f(T_k) with
/// the corrected right-hand side
///   Phi_k(t,x) = phi(t,x) - e^{-lambda (t - T_k)} phi(T_k, f(T_k)),
/// which vanishes at the new start by construction and keeps the same
/// Lipschitz constant.
Trajectory solve_global(const IVP& ivp, double t_end, const SolverConfig& cfg);

/// max over the interior joins T_k of |D^alpha f(T_k) - phi(T_k, f(T_k))|,
/// with the derivative taken over the full history from a. Zero boundaries
/// (single-segment solve) gives 0.
double segment_join_check(const Trajectory& traj, const IVP& ivp);

}  // namespace cfkit

#endif
