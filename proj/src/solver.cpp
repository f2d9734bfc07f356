#include "cfkit/solver.hpp"

#include "cfkit/cf_operators.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cfkit {

namespace {

using Rhs = std::function<double(double, double)>;

Eigen::Index validated_steps(double span, double dt, const char* who) {
  const auto steps = static_cast<Eigen::Index>(std::llround(span / dt));
  if (steps < 1 || std::abs(steps * dt - span) > 1e-9 * std::max(1.0, std::abs(span))) {
    std::ostringstream os;
    os << who << ": dt_grid = " << dt << " must divide the horizon " << span;
    throw std::invalid_argument(os.str());
  }
  return steps;
}

void validate_config(const SolverConfig& cfg) {
  if (!(cfg.dt_grid > 0.0)) throw std::invalid_argument("SolverConfig: dt_grid must be > 0");
  if (!(cfg.segment_fraction > 0.0 && cfg.segment_fraction < 1.0))
    throw std::invalid_argument("SolverConfig: segment_fraction must lie strictly in (0,1)");
  if (!(cfg.picard_tol > 0.0)) throw std::invalid_argument("SolverConfig: picard_tol must be > 0");
  if (cfg.max_picard_iters < 1)
    throw std::invalid_argument("SolverConfig: max_picard_iters must be >= 1");
  if (!(cfg.compat_tol >= 0.0)) throw std::invalid_argument("SolverConfig: compat_tol must be >= 0");
}

struct SegmentResult {
  Eigen::ArrayXd values;
  int iters = 0;
  double initial_change = 0.0;
  double max_ratio = 0.0;
};

// One Picard solve of f = x0 + (1-alpha) g + alpha * cumtrapz(g), g = rhs(., f).
// The first node is pinned to x0: rhs vanishes there by hypothesis (or by the
// segment correction), so this removes only rounding slack.
SegmentResult picard_segment(const Rhs& rhs, double t0, double x0, Eigen::Index steps,
                             const FracOrder& order, double lipschitz,
                             const SolverConfig& cfg) {
  const double dt = cfg.dt_grid;
  const double span = static_cast<double>(steps) * dt;
  const double alpha = order.alpha;

  // contraction certificate, algebraically equivalent to span < window
  const double q = (1.0 - alpha) * lipschitz + alpha * lipschitz * span;
  if (q >= 1.0) {
    std::ostringstream os;
    os << "segment of length " << span << " violates the contraction window: "
       << "(1-alpha)L + alpha L dT = " << q << " >= 1 (hypothesis L < 1/(1-alpha))";
    throw WindowViolation(os.str());
  }

  const Eigen::Index n_nodes = steps + 1;
  Eigen::ArrayXd t(n_nodes);
  for (Eigen::Index j = 0; j < n_nodes; ++j) t[j] = t0 + static_cast<double>(j) * dt;

  SegmentResult res;
  Eigen::ArrayXd f = Eigen::ArrayXd::Constant(n_nodes, x0);
  Eigen::ArrayXd g(n_nodes), fnew(n_nodes);
  double prev_delta = 0.0;

  for (int iter = 1; iter <= cfg.max_picard_iters; ++iter) {
    for (Eigen::Index j = 0; j < n_nodes; ++j) g[j] = rhs(t[j], f[j]);

    fnew[0] = x0;
    double running = 0.0;
    for (Eigen::Index j = 1; j < n_nodes; ++j) {
      running += 0.5 * dt * (g[j - 1] + g[j]);
      fnew[j] = x0 + (1.0 - alpha) * g[j] + alpha * running;
    }

    const double delta = (fnew - f).abs().maxCoeff();
    f.swap(fnew);
    res.iters = iter;
    if (iter == 1) res.initial_change = delta;
    // ratios below ~10 tol are rounding noise, not contraction evidence
    if (iter >= 4 && prev_delta > 10.0 * cfg.picard_tol)
      res.max_ratio = std::max(res.max_ratio, delta / prev_delta);
    prev_delta = delta;

    if (delta <= cfg.picard_tol) {
      res.values = std::move(f);
      return res;
    }
  }
  std::ostringstream os;
  os << "Picard iteration did not converge within " << cfg.max_picard_iters
     << " iterations (last sup-change " << prev_delta
     << "); the Lipschitz constant may be underestimated or picard_tol too tight";
  throw NonConvergence(os.str());
}

// Applies the auto-correct policy; returns the rhs actually solved.
Rhs effective_rhs(const IVP& ivp, const SolverConfig& cfg, bool& corrected, double& r0_out) {
  const double r0 = ivp.rhs(ivp.a, ivp.a0);
  r0_out = r0;
  if (std::abs(r0) <= cfg.compat_tol) {
    corrected = false;
    return ivp.rhs;
  }
  if (!cfg.auto_correct) {
    std::ostringstream os;
    os << "hypothesis phi(a, a0) = 0 violated: |phi(" << ivp.a << ", " << ivp.a0
       << ")| = " << std::abs(r0) << " > compat_tol = " << cfg.compat_tol
       << " (enable auto_correct to solve the corrected equation)";
    throw CompatibilityViolation(os.str());
  }
  corrected = true;
  const Rhs base = ivp.rhs;
  const double a = ivp.a;
  const double lam = ivp.order.lambda;
  return [base, a, lam, r0](double t, double x) {
    return base(t, x) - std::exp(-lam * (t - a)) * r0;
  };
}

double residual_max(const Trajectory& traj, const Rhs& rhs, const FracOrder& order) {
  const SampledFunction f(traj.grid, traj.values);
  const SampledFunction d = cf_derivative(f, order);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < traj.grid.node_count(); ++j)
    worst = std::max(worst, std::abs(d.values[j] - rhs(traj.grid.node(j), traj.values[j])));
  return worst;
}

}  // namespace

double contraction_window(const FracOrder& order, double lipschitz) {
  if (lipschitz < 0.0) throw std::invalid_argument("contraction_window: L must be >= 0");
  if (lipschitz == 0.0) return std::numeric_limits<double>::infinity();
  const double bound = 1.0 / (1.0 - order.alpha);
  if (lipschitz >= bound) {
    std::ostringstream os;
    os << "hypothesis L < 1/(1-alpha) violated: L = " << lipschitz
       << ", 1/(1-alpha) = " << bound << " (contraction window is empty)";
    throw WindowViolation(os.str());
  }
  return (1.0 - (1.0 - order.alpha) * lipschitz) / (order.alpha * lipschitz);
}

Trajectory solve_local(const IVP& ivp, double T, const SolverConfig& cfg) {
  validate_config(cfg);
  if (!(T > ivp.a)) throw std::invalid_argument("solve_local: T must be > a");
  contraction_window(ivp.order, ivp.lipschitz);  // enforce the L hypothesis

  bool corrected = false;
  double r0 = 0.0;
  const Rhs rhs = effective_rhs(ivp, cfg, corrected, r0);

  const Eigen::Index steps = validated_steps(T - ivp.a, cfg.dt_grid, "solve_local");
  SegmentResult seg = picard_segment(rhs, ivp.a, ivp.a0, steps, ivp.order, ivp.lipschitz, cfg);

  Trajectory traj{UniformGrid(ivp.a, cfg.dt_grid, steps), std::move(seg.values),
                  {},  {seg.iters}, {seg.initial_change}};
  traj.max_contraction_ratio = seg.max_ratio;
  traj.corrected = corrected;
  traj.correction_value = corrected ? r0 : 0.0;
  traj.max_residual = residual_max(traj, rhs, ivp.order);
  return traj;
}

Trajectory solve_global(const IVP& ivp, double t_end, const SolverConfig& cfg) {
  validate_config(cfg);
  if (!(t_end > ivp.a)) throw std::invalid_argument("solve_global: t_end must be > a");

  const double window = contraction_window(ivp.order, ivp.lipschitz);
  bool corrected = false;
  double r0 = 0.0;
  const Rhs rhs = effective_rhs(ivp, cfg, corrected, r0);

  // Segment length: a fixed fraction of the window (the window bound is an
  // open condition). For L = 0 the window is unbounded; cap by the kernel
  // memory scale so per-segment grids stay finite.
  const double span = t_end - ivp.a;
  const double dT = ivp.lipschitz > 0.0
                        ? cfg.segment_fraction * window
                        : std::min(span, 10.0 / ivp.order.lambda);
  const Eigen::Index n_total = validated_steps(span, cfg.dt_grid, "solve_global");
  Eigen::Index per_seg = static_cast<Eigen::Index>(std::floor(dT / cfg.dt_grid + 1e-9));
  per_seg = std::max<Eigen::Index>(1, std::min(per_seg, n_total));

  Trajectory traj{UniformGrid(ivp.a, cfg.dt_grid, n_total),
                  Eigen::ArrayXd(n_total + 1), {}, {}, {}};
  traj.corrected = corrected;
  traj.correction_value = corrected ? r0 : 0.0;

  const double lam = ivp.order.lambda;
  Eigen::Index done = 0;
  double seg_start_value = ivp.a0;
  while (done < n_total) {
    const Eigen::Index m = std::min(per_seg, n_total - done);
    const double t_k = traj.grid.node(done);

    Rhs seg_rhs = rhs;
    if (done > 0) {
      // restart correction: vanishes at (T_k, f(T_k)) and decays with the
      // kernel, so the sub-problem satisfies the same hypotheses
      const double phi_at_join = rhs(t_k, seg_start_value);
      const Rhs base = rhs;
      seg_rhs = [base, t_k, lam, phi_at_join](double t, double x) {
        return base(t, x) - std::exp(-lam * (t - t_k)) * phi_at_join;
      };
      traj.segment_boundaries.push_back(t_k);
    }

    SegmentResult seg =
        picard_segment(seg_rhs, t_k, seg_start_value, m, ivp.order, ivp.lipschitz, cfg);
    traj.values.segment(done, m + 1) = seg.values;
    traj.picard_iters.push_back(seg.iters);
    traj.initial_changes.push_back(seg.initial_change);
    traj.max_contraction_ratio = std::max(traj.max_contraction_ratio, seg.max_ratio);

    done += m;
    seg_start_value = traj.values[done];
  }

  traj.max_residual = residual_max(traj, rhs, ivp.order);
  return traj;
}

double segment_join_check(const Trajectory& traj, const IVP& ivp) {
  if (traj.segment_boundaries.empty()) return 0.0;

  Rhs rhs = ivp.rhs;
  if (traj.corrected) {
    const Rhs base = ivp.rhs;
    const double a = traj.grid.a;
    const double lam = ivp.order.lambda;
    const double r0 = traj.correction_value;
    rhs = [base, a, lam, r0](double t, double x) {
      return base(t, x) - std::exp(-lam * (t - a)) * r0;
    };
  }

  const SampledFunction f(traj.grid, traj.values);
  const SampledFunction d = cf_derivative(f, ivp.order);
  double worst = 0.0;
  for (double t_k : traj.segment_boundaries) {
    const auto j = static_cast<Eigen::Index>(std::llround((t_k - traj.grid.a) / traj.grid.dt));
    worst = std::max(worst, std::abs(d.values[j] - rhs(t_k, traj.values[j])));
  }
  return worst;
}

}  // namespace cfkit
