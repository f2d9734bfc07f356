#include "verify.hpp"

#include "cfkit/analytic_catalog.hpp"
#include "cfkit/cf_operators.hpp"
#include "cfkit/oracle.hpp"
#include "cfkit/solver.hpp"
#include "cfkit/special_functions.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace cfkit::verify {

namespace {

using Eigen::ArrayXd;

struct Suite {
  std::vector<CheckResult> results;

  void check(const std::string& name, bool pass, const std::string& detail = "") {
    results.push_back({name, pass, detail});
  }

  // a check that should not throw; an exception is a failure with the message
  template <class F>
  void guarded(const std::string& name, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(name, false, std::string("unexpected exception: ") + e.what());
    }
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

SampledFunction sample_fn(double a, double b, double dt, double (*f)(double)) {
  const auto n = static_cast<Eigen::Index>(std::llround((b - a) / dt));
  return sample(UniformGrid(a, dt, n), f);
}

double max_err_vs(const SampledFunction& got, const std::function<double(double)>& want) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < got.grid.node_count(); ++i)
    worst = std::max(worst, std::abs(got.values[i] - want(got.grid.node(i))));
  return worst;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

// ----------------------------------------------------------------- ops --

void ops_zero_at_start_and_linearity(Suite& s) {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const UniformGrid g(0.0, 0.01, 256);
  ArrayXd fv(g.node_count()), gv(g.node_count());
  for (Eigen::Index i = 0; i < g.node_count(); ++i) {
    fv[i] = u(rng);
    gv[i] = u(rng);
  }
  const SampledFunction f(g, fv), h(g, gv);

  bool zero_ok = true;
  double lin_worst = 0.0;
  for (double alpha : {0.25, 0.5, 0.75}) {
    const FracOrder order(alpha);
    const auto df = cf_derivative(f, order);
    const auto dh = cf_derivative(h, order);
    zero_ok = zero_ok && df.values[0] == 0.0 && dh.values[0] == 0.0;

    const double c1 = 0.7, c2 = -1.3;
    const SampledFunction mix(g, c1 * fv + c2 * gv);
    const auto dmix = cf_derivative(mix, order);
    lin_worst = std::max(
        lin_worst, (dmix.values - (c1 * df.values + c2 * dh.values)).abs().maxCoeff());
    const auto imix = cf_integral(mix, order);
    const auto i1 = cf_integral(f, order);
    const auto i2 = cf_integral(h, order);
    lin_worst = std::max(
        lin_worst, (imix.values - (c1 * i1.values + c2 * i2.values)).abs().maxCoeff());
  }
  s.check("ops.zero_at_start", zero_ok);
  s.check("ops.linearity", lin_worst <= 1e-11, "worst " + num(lin_worst));
}

void ops_inverse_identities(Suite& s) {
  const double dt = 1e-3;
  const auto f = sample_fn(0.0, 2.0, dt, [](double t) { return std::exp(t); });
  double barrow_worst = 0.0, left_worst = 0.0;
  for (double alpha : {0.25, 0.5, 0.75}) {
    const FracOrder order(alpha);
    const auto i_of_d = cf_integral(cf_derivative(f, order), order);
    barrow_worst = std::max(barrow_worst, max_err_vs(i_of_d, [](double t) {
                              return std::exp(t) - 1.0;
                            }));
    const auto d_of_i = cf_derivative(cf_integral(f, order), order);
    left_worst = std::max(left_worst, max_err_vs(d_of_i, [&](double t) {
                            return std::exp(t) - std::exp(-order.lambda * t);
                          }));
  }
  s.check("ops.barrow_rule", barrow_worst <= 5e-5, "worst " + num(barrow_worst));
  s.check("ops.left_inverse_defect", left_worst <= 5e-5, "worst " + num(left_worst));
}

void ops_convergence_order(Suite& s) {
  const FracOrder order(0.5);
  const CatalogFunction fn = Sine{};
  auto err_at = [&](double dt) {
    const auto f = sample_fn(0.0, 2.0 * M_PI, dt, [](double t) { return std::sin(t); });
    const auto d = cf_derivative(f, order);
    return max_err_vs(d, [&](double t) { return cf_derivative_closed(fn, order, 0.0, t); });
  };
  const double e1 = err_at(2e-3), e2 = err_at(1e-3);
  s.check("ops.convergence_order", e1 / e2 >= 3.6,
          "halving ratio " + num(e1 / e2) + " (errors " + num(e1) + " -> " + num(e2) + ")");
}

void ops_translation(Suite& s) {
  const FracOrder order(0.5);
  const CatalogFunction fn = Exponential{1.0};
  const double d_at_a = cf_derivative_closed(fn, order, 0.0, 1.0);
  double worst = 0.0;
  for (double t : {1.5, 2.0, 3.0}) {
    const double d_at_t = cf_derivative_closed(fn, order, 0.0, t);
    const double got = translate_lower_limit(d_at_t, d_at_a, order, t - 1.0);
    OracleSpec spec{[](double tau) { return std::exp(tau); }, 1.0, t, order};
    worst = std::max(worst, std::abs(got - oracle_shifted(spec)));
  }
  s.check("ops.translation_formula", worst <= 1e-8, "worst " + num(worst));
}

// ------------------------------------------------------------- catalog --

void catalog_vs_oracle(Suite& s) {
  struct Case {
    CatalogFunction fn;
    std::function<double(double)> f_prime;
    double grading;
  };
  const std::vector<Case> cases = {
      {Power{0.5}, [](double tau) { return 0.5 * std::pow(tau, -0.5); }, 4.0},
      {Monomial{2}, [](double tau) { return 2.0 * tau; }, 1.0},
      {Exponential{1.0}, [](double tau) { return std::exp(tau); }, 1.0},
      {Sine{}, [](double tau) { return std::cos(tau); }, 1.0},
  };
  double worst = 0.0;
  for (const auto& c : cases)
    for (double alpha : {0.25, 0.75})
      for (double t : {0.1, 1.0}) {
        const FracOrder order(alpha);
        OracleSpec spec{c.f_prime, 0.0, t, order, 16, c.grading};
        const double want = oracle_cf_derivative(spec);
        const double got = cf_derivative_closed(c.fn, order, 0.0, t);
        worst = std::max(worst, std::abs(got - want));
      }
  s.check("catalog.oracle_agreement", worst <= 1e-8, "worst " + num(worst));
}

void catalog_vs_operator(Suite& s) {
  const FracOrder order(0.5);
  const double dt = 1e-3;
  double worst = 0.0;
  {
    const auto f = sample_fn(0.0, 5.0, dt, [](double t) { return std::sin(t); });
    worst = std::max(worst, max_err_vs(cf_derivative(f, order), [&](double t) {
                       return cf_derivative_closed(Sine{}, order, 0.0, t);
                     }));
  }
  {
    const auto f = sample_fn(0.0, 5.0, dt, [](double t) { return t * t * t; });
    worst = std::max(worst, max_err_vs(cf_derivative(f, order), [&](double t) {
                       return cf_derivative_closed(Monomial{3}, order, 0.0, t);
                     }));
  }
  s.check("catalog.operator_agreement", worst <= 1e-4, "worst " + num(worst));
}

void catalog_classical_limits(Suite& s, std::ostream& report) {
  const std::vector<double> alphas = {0.9, 0.99, 0.999};

  std::vector<double> perr;
  for (double alpha : alphas) {
    const FracOrder order(alpha);
    perr.push_back(std::abs(cf_derivative_closed(Power{0.5}, order, 0.0, 2.0) -
                            classical_limit_derivative(Power{0.5}, 0.0, 2.0)));
  }
  s.check("catalog.power_classical_limit", strictly_decreasing(perr));

  bool trig_ok = true;
  report << "closed-form error against the classical derivative:\n"
         << "  family      t      alpha=0.9    alpha=0.99   alpha=0.999\n";
  for (const CatalogFunction fn : {CatalogFunction(Sine{}), CatalogFunction(Cosine{})})
    for (double t : {0.5, 1.0, 2.0}) {
      std::vector<double> errs;
      for (double alpha : alphas) {
        const FracOrder order(alpha);
        errs.push_back(std::abs(cf_derivative_closed(fn, order, 0.0, t) -
                                classical_limit_derivative(fn, 0.0, t)));
      }
      trig_ok = trig_ok && strictly_decreasing(errs);
      report << "  " << (std::holds_alternative<Sine>(fn) ? "sine  " : "cosine") << "    "
             << num(t) << "    " << num(errs[0]) << "   " << num(errs[1]) << "   "
             << num(errs[2]) << "\n";
    }
  s.check("catalog.trig_classical_limits", trig_ok);
}

void catalog_pointwise(Suite& s) {
  // exponential eigen-relation coefficient: c/(c(1-alpha)+alpha) at c=1
  double worst = 0.0;
  for (double alpha = 0.1; alpha < 0.95; alpha += 0.1)
    worst = std::max(worst, std::abs(1.0 / ((1.0 - alpha) + alpha) - 1.0));
  s.check("catalog.exp_eigenrelation", worst <= 2.3e-16, "worst " + num(worst));

  // degenerate exponential branch: generic branch at c(1 +- eps) brackets it
  {
    const FracOrder order(0.5);
    const double c = -order.lambda;
    const double v = cf_derivative_closed(Exponential{c}, order, 0.0, 1.0);
    const double lo = cf_derivative_closed(Exponential{c * (1 - 1e-6)}, order, 0.0, 1.0);
    const double hi = cf_derivative_closed(Exponential{c * (1 + 1e-6)}, order, 0.0, 1.0);
    const bool ok = v >= std::min(lo, hi) - 1e-4 && v <= std::max(lo, hi) + 1e-4;
    s.check("catalog.degenerate_exponential", ok,
            num(lo) + " / " + num(v) + " / " + num(hi));
  }

  // the two Power representations agree away from 0, and the series form
  // extends by 0 at t = 0
  {
    const FracOrder order(0.5);
    const double a = cf_derivative_closed(Power{0.25}, order, 0.0, 1.0);
    const double b = power_series_form(0.25, order, 1.0);
    bool ok = std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a));
    ok = ok && power_series_form(order.alpha / 2.0, order, 0.0) == 0.0;
    s.check("catalog.power_series_form", ok, "diff " + num(std::abs(a - b)));
  }

  // the CF derivative of sine vanishes at 0 while its classical limit is 1
  {
    bool ok = true;
    for (double alpha = 0.1; alpha < 0.95; alpha += 0.1)
      ok = ok && cf_derivative_closed(Sine{}, FracOrder(alpha), 0.0, 0.0) == 0.0;
    ok = ok && classical_limit_derivative(Sine{}, 0.0, 0.0) == 1.0;
    s.check("catalog.sine_at_zero", ok);
  }
}

// -------------------------------------------------------------- solver --

IVP manufactured_t2(double lipschitz = 0.5) {
  // exact solution t^2: rhs = L*x + D^{1/2}[t^2] - L*t^2, built from the
  // closed form 4t - 4(1 - e^{-t}) at alpha = 1/2
  return IVP{[lipschitz](double t, double x) {
               return lipschitz * x + 4.0 * t - 4.0 * (1.0 - std::exp(-t)) -
                      lipschitz * t * t;
             },
             0.0, 0.0, lipschitz, FracOrder(0.5)};
}

void solver_manufactured(Suite& s) {
  const IVP ivp = manufactured_t2();
  SolverConfig cfg{1e-3};

  const Trajectory local = solve_local(ivp, 1.0, cfg);
  const double err_local =
      max_err_vs(SampledFunction(local.grid, local.values), [](double t) { return t * t; });
  s.check("solver.manufactured_local", err_local <= 1e-5, "max err " + num(err_local));

  const double q = 0.5 * 0.5 + 0.5 * 0.5 * 1.0;
  const int bound =
      static_cast<int>(std::ceil(std::log(cfg.picard_tol / local.initial_changes[0]) /
                                 std::log(q))) + 2;
  s.check("solver.picard_geometric", local.picard_iters[0] <= bound,
          std::to_string(local.picard_iters[0]) + " iters vs bound " + std::to_string(bound));
  s.check("solver.contraction_ratio", local.max_contraction_ratio <= q * 1.05,
          "observed " + num(local.max_contraction_ratio) + " vs q " + num(q));

  const Trajectory global = solve_global(ivp, 5.0, cfg);
  const double err_global =
      max_err_vs(SampledFunction(global.grid, global.values), [](double t) { return t * t; });
  const double join = segment_join_check(global, ivp);
  s.check("solver.manufactured_global",
          global.segment_boundaries.size() >= 1 && err_global <= 1e-4,
          "max err " + num(err_global) + ", " +
              std::to_string(global.segment_boundaries.size() + 1) + " segments");
  s.check("solver.segment_join", join <= 1e-4, "worst join defect " + num(join));

  // identical code path on a single-segment horizon
  const Trajectory g1 = solve_global(ivp, 1.0, cfg);
  s.check("solver.global_equals_local",
          (g1.values - local.values).abs().maxCoeff() == 0.0);
}

void solver_hypotheses(Suite& s) {
  SolverConfig cfg{1e-2};
  // L >= 1/(1-alpha)
  {
    bool threw = false;
    std::string msg;
    try {
      const IVP bad{[](double, double x) { return 2.5 * x; }, 0.0, 0.0, 2.5, FracOrder(0.5)};
      solve_global(bad, 1.0, cfg);
    } catch (const WindowViolation& e) {
      threw = true;
      msg = e.what();
    }
    s.check("solver.window_violation",
            threw && msg.find("L < 1/(1-alpha)") != std::string::npos, msg);
  }
  // phi(a, a0) != 0
  {
    const IVP bad{[](double, double) { return 1.0; }, 0.0, 0.0, 0.0, FracOrder(0.5)};
    bool threw = false;
    try {
      solve_global(bad, 1.0, cfg);
    } catch (const CompatibilityViolation&) {
      threw = true;
    }
    s.check("solver.compatibility_violation", threw);

    SolverConfig fixed = cfg;
    fixed.auto_correct = true;
    const Trajectory traj = solve_global(bad, 1.0, fixed);
    // corrected equation: D f = 1 - e^{-lambda t}, solved in closed form by
    // f = (1-alpha)(1-e^{-lt}) + alpha (t - (1-e^{-lt})/l)
    const double lam = 1.0;
    const double err = max_err_vs(
        SampledFunction(traj.grid, traj.values), [lam](double t) {
          const double w = 1.0 - std::exp(-lam * t);
          return 0.5 * w + 0.5 * (t - w / lam);
        });
    s.check("solver.auto_correct", traj.corrected && err <= 1e-4, "max err " + num(err));
  }
}

void solver_memory(Suite& s) {
  const IVP ivp = manufactured_t2();
  const SolverConfig cfg{1e-3};
  const Trajectory traj = solve_global(ivp, 5.0, cfg);
  if (traj.segment_boundaries.empty()) {
    s.check("solver.memory_property", false, "expected at least two segments");
    return;
  }
  const double t1 = traj.segment_boundaries[0];
  const auto j1 = static_cast<Eigen::Index>(std::llround((t1 - traj.grid.a) / traj.grid.dt));

  const SampledFunction f(traj.grid, traj.values);
  const double base = cf_derivative(f, ivp.order).values[j1];

  Eigen::ArrayXd bumped = traj.values;
  for (Eigen::Index i = 1; i < j1; ++i) bumped[i] += 1e-3;  // f(T_1) stays fixed
  const double moved = cf_derivative(SampledFunction(traj.grid, bumped), ivp.order).values[j1];
  s.check("solver.memory_property", std::abs(moved - base) > 1e-6,
          "derivative at T_1 moved by " + num(std::abs(moved - base)));
}

// -------------------------------------------------------------- limits --

void limits_alpha_to_zero(Suite& s, std::ostream& report) {
  const auto f = sample_fn(0.0, 1.0, 1e-3, [](double t) { return std::exp(t); });
  std::vector<double> errs;
  report << "alpha -> 0: max |D^alpha f - (f - f(a))| for f = e^t on [0,1]\n";
  for (double alpha : {0.1, 0.01, 0.001}) {
    const auto d = cf_derivative(f, FracOrder(alpha));
    const double e = max_err_vs(d, [](double t) { return std::exp(t) - 1.0; });
    errs.push_back(e);
    report << "  alpha = " << alpha << ": " << num(e) << "\n";
  }
  s.check("limits.alpha_to_zero", strictly_decreasing(errs));
}

void limits_alpha_to_one(Suite& s, std::ostream& report) {
  // dt chosen so the O(dt^2 / (1-alpha)) scheme error stays well below the
  // alpha-gap decrement between successive alphas
  const double dt = 5e-5;
  bool ok = true;
  for (int which = 0; which < 2; ++which) {
    const auto f = which == 0 ? sample_fn(0.0, 1.0, dt, [](double t) { return std::exp(t); })
                              : sample_fn(0.0, 1.0, dt, [](double t) { return std::sin(t); });
    report << "alpha -> 1: max |D^alpha f - f'| on [0.1, 1] for f = "
           << (which == 0 ? "e^t" : "sin t") << "\n";
    std::vector<double> errs;
    for (double alpha : {0.9, 0.99, 0.999}) {
      const auto d = cf_derivative(f, FracOrder(alpha));
      double worst = 0.0;
      for (Eigen::Index i = 0; i < d.grid.node_count(); ++i) {
        const double t = d.grid.node(i);
        if (t < 0.1) continue;
        const double classical = which == 0 ? std::exp(t) : std::cos(t);
        worst = std::max(worst, std::abs(d.values[i] - classical));
      }
      errs.push_back(worst);
      report << "  alpha = " << alpha << ": " << num(worst) << "\n";
    }
    ok = ok && strictly_decreasing(errs);
  }
  s.check("limits.alpha_to_one", ok);
}

void limits_ml_vanishing(Suite& s, std::ostream& report) {
  bool ok = true;
  report << "|E_{1,beta}(-x)| along x = 10, 50, 100, 200:\n";
  for (double beta : {0.5, 1.0, 2.0, 4.0}) {
    report << "  beta = " << beta << ":";
    double prev = std::numeric_limits<double>::infinity();
    for (double x : {10.0, 50.0, 100.0, 200.0}) {
      const double v = std::abs(mittag_leffler_1(MLArg(beta, -x)));
      report << " " << num(v);
      ok = ok && v <= prev;
      prev = v;
    }
    report << "\n";
  }
  s.check("limits.ml_monotone_vanishing", ok);
}

}  // namespace

std::vector<CheckResult> suite_ops(std::ostream&) {
  Suite s;
  s.guarded("ops.zero_at_start", [&] { ops_zero_at_start_and_linearity(s); });
  s.guarded("ops.inverse_identities", [&] { ops_inverse_identities(s); });
  s.guarded("ops.convergence_order", [&] { ops_convergence_order(s); });
  s.guarded("ops.translation_formula", [&] { ops_translation(s); });
  return s.results;
}

std::vector<CheckResult> suite_catalog(std::ostream& report) {
  Suite s;
  s.guarded("catalog.oracle_agreement", [&] { catalog_vs_oracle(s); });
  s.guarded("catalog.operator_agreement", [&] { catalog_vs_operator(s); });
  s.guarded("catalog.classical_limits", [&] { catalog_classical_limits(s, report); });
  s.guarded("catalog.pointwise", [&] { catalog_pointwise(s); });
  return s.results;
}

std::vector<CheckResult> suite_solver(std::ostream&) {
  Suite s;
  s.guarded("solver.manufactured", [&] { solver_manufactured(s); });
  s.guarded("solver.hypotheses", [&] { solver_hypotheses(s); });
  s.guarded("solver.memory", [&] { solver_memory(s); });
  return s.results;
}

std::vector<CheckResult> suite_limits(std::ostream& report) {
  Suite s;
  s.guarded("limits.alpha_to_zero", [&] { limits_alpha_to_zero(s, report); });
  s.guarded("limits.alpha_to_one", [&] { limits_alpha_to_one(s, report); });
  s.guarded("limits.ml_monotone_vanishing", [&] { limits_ml_vanishing(s, report); });
  return s.results;
}

}  // namespace cfkit::verify
