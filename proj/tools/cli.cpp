#include "cli.hpp"

#include "verify.hpp"

#include "cfkit/analytic_catalog.hpp"
#include "cfkit/cf_operators.hpp"
#include "cfkit/csv.hpp"
#include "cfkit/expr.hpp"
#include "cfkit/oracle.hpp"
#include "cfkit/solver.hpp"
#include "cfkit/special_functions.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

namespace cfkit::cli {

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailure = 1;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

// Data goes to --out (or stdout); diagnostics go to stderr so pipelines
// stay clean.
void emit_table(const OutputTable& table, const std::string& out_path) {
  if (out_path.empty()) {
    write_csv(std::cout, table);
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open output file: " + out_path);
  write_csv(os, table);
}

Eigen::Index steps_or_throw(double span, double dt, const char* what) {
  const auto steps = static_cast<Eigen::Index>(std::llround(span / dt));
  if (steps < 1 || std::abs(steps * dt - span) > 1e-9 * std::max(1.0, std::abs(span)))
    throw std::invalid_argument(std::string(what) + ": dt must divide the range");
  return steps;
}

// --func NAME[:PARAM] with NAME in {power, monomial, exp, sin, cos, const}
CatalogFunction parse_catalog_function(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::optional<double> param;
  if (colon != std::string::npos) {
    try {
      param = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("--func: malformed parameter in '" + text + "'");
    }
  }
  auto need = [&](const char* who) {
    if (!param) throw std::invalid_argument(std::string("--func ") + who + " needs a parameter, e.g. " + who + ":0.5");
    return *param;
  };
  auto forbid = [&](const char* who) {
    if (param) throw std::invalid_argument(std::string("--func ") + who + " takes no parameter");
  };
  if (name == "power") return Power{need("power")};
  if (name == "monomial") {
    const double m = need("monomial");
    if (m < 1 || m != std::floor(m))
      throw std::invalid_argument("--func monomial: parameter must be an integer >= 1");
    return Monomial{static_cast<int>(m)};
  }
  if (name == "exp") return Exponential{need("exp")};
  if (name == "sin") { forbid("sin"); return Sine{}; }
  if (name == "cos") { forbid("cos"); return Cosine{}; }
  if (name == "const") return Constant{need("const")};
  throw std::invalid_argument("--func: unknown function '" + name +
                              "' (use power:B, monomial:M, exp:C, sin, cos, const:C)");
}

// Closed-form value with the translation composition for the lower-limit-0
// families; Power/Monomial take the lower limit directly.
double closed_value(const CatalogFunction& fn, const FracOrder& order, double a, double t) {
  const bool shifted_family = std::holds_alternative<Exponential>(fn) ||
                              std::holds_alternative<Sine>(fn) ||
                              std::holds_alternative<Cosine>(fn);
  if (!shifted_family || a == 0.0) return cf_derivative_closed(fn, order, a, t);
  const double d_t = cf_derivative_closed(fn, order, 0.0, t);
  const double d_a = cf_derivative_closed(fn, order, 0.0, a);
  return translate_lower_limit(d_t, d_a, order, t - a);
}

std::function<double(double)> classical_prime(const CatalogFunction& fn, double a) {
  return [fn, a](double tau) { return classical_limit_derivative(fn, a, tau); };
}

double default_grading(const CatalogFunction& fn) {
  if (const auto* p = std::get_if<Power>(&fn); p && p->beta < 1.0)
    return std::ceil(2.0 / p->beta);
  return 1.0;
}

struct DerivArgs {
  std::string func;
  double alpha = 0.5;
  double a = 0.0;
  double t0 = 0.0;
  double t1 = 1.0;
  double dt = 0.01;
  std::string method = "analytic";
  std::string out;
};

int cmd_deriv(const DerivArgs& args) {
  const CatalogFunction fn = parse_catalog_function(args.func);
  const FracOrder order(args.alpha);
  if (!(args.t1 > args.t0) || !(args.t0 >= args.a))
    throw std::invalid_argument("cmd_deriv: need t1 > t0 >= a");

  const Eigen::Index n_out = steps_or_throw(args.t1 - args.t0, args.dt, "cmd_deriv");
  OutputTable table;
  table.header = {"t", "value"};

  if (args.method == "analytic") {
    for (Eigen::Index i = 0; i <= n_out; ++i) {
      const double t = args.t0 + static_cast<double>(i) * args.dt;
      table.add_row({t, closed_value(fn, order, args.a, t)});
    }
  } else if (args.method == "grid") {
    // the numeric operator needs the whole history from the lower limit
    const Eigen::Index n_grid = steps_or_throw(args.t1 - args.a, args.dt, "cmd_deriv");
    const Eigen::Index skip = n_grid - n_out;
    if (std::abs(args.a + static_cast<double>(skip) * args.dt - args.t0) >
        1e-9 * std::max(1.0, std::abs(args.t0)))
      throw std::invalid_argument("cmd_deriv: with --method grid, dt must divide t0 - a");
    const UniformGrid grid(args.a, args.dt, n_grid);
    const auto f = sample(grid, [&](double t) { return catalog_value(fn, args.a, t); });
    const auto d = cf_derivative(f, order);
    for (Eigen::Index i = skip; i <= n_grid; ++i)
      table.add_row({grid.node(i), d.values[i]});
  } else if (args.method == "oracle") {
    if (std::holds_alternative<Constant>(fn)) {
      for (Eigen::Index i = 0; i <= n_out; ++i)
        table.add_row({args.t0 + static_cast<double>(i) * args.dt, 0.0});
    } else {
      const auto fp = classical_prime(fn, args.a);
      for (Eigen::Index i = 0; i <= n_out; ++i) {
        const double t = args.t0 + static_cast<double>(i) * args.dt;
        OracleSpec spec{fp, args.a, t, order, 16, default_grading(fn)};
        table.add_row({t, oracle_cf_derivative(spec)});
      }
    }
  } else {
    throw std::invalid_argument("cmd_deriv: --method must be analytic, grid or oracle");
  }

  emit_table(table, args.out);
  return kOk;
}

struct SolveArgs {
  std::string rhs;
  double alpha = 0.5;
  double a = 0.0;
  double a0 = 0.0;
  double t_end = 1.0;
  double dt = 1e-3;
  double lipschitz = -1.0;
  bool lipschitz_given = false;
  double segment_fraction = 0.5;
  double picard_tol = 1e-12;
  bool auto_correct = false;
  std::string out;
};

int cmd_solve(const SolveArgs& args) {
  const expr::Expr rhs = expr::Expr::parse(args.rhs);
  const FracOrder order(args.alpha);
  if (!(args.t_end > args.a)) throw std::invalid_argument("cmd_solve: need t-end > a");

  double lipschitz = args.lipschitz;
  if (!args.lipschitz_given) {
    const double radius = 10.0 * std::max(1.0, std::abs(args.a0));
    lipschitz = expr::estimate_lipschitz(rhs, {args.a, args.t_end},
                                         {args.a0 - radius, args.a0 + radius}, 64);
    std::cerr << "warning: --lipschitz not given; estimated L = " << format_value(lipschitz)
              << " over t in [" << args.a << ", " << args.t_end << "], x in ["
              << args.a0 - radius << ", " << args.a0 + radius << "]\n";
  } else if (lipschitz < 0.0) {
    throw std::invalid_argument("cmd_solve: --lipschitz must be >= 0");
  }

  IVP ivp{[&rhs](double t, double x) { return rhs.eval(t, x); },
          args.a, args.a0, lipschitz, order};
  SolverConfig cfg{args.dt, args.segment_fraction, args.picard_tol, 200, 1e-12,
                   args.auto_correct};

  const Trajectory traj = solve_global(ivp, args.t_end, cfg);
  const double join = segment_join_check(traj, ivp);

  OutputTable table;
  table.header = {"t", "value", "segment"};
  std::size_t boundary = 0;
  for (Eigen::Index i = 0; i < traj.grid.node_count(); ++i) {
    // the node at T_k still belongs to the segment that produced it
    while (boundary < traj.segment_boundaries.size() &&
           traj.grid.node(i) > traj.segment_boundaries[boundary] + 0.5 * traj.grid.dt)
      ++boundary;
    table.add_row({traj.grid.node(i), traj.values[i], static_cast<double>(boundary)});
  }
  emit_table(table, args.out);

  int max_iters = 0;
  for (int it : traj.picard_iters) max_iters = std::max(max_iters, it);
  if (traj.corrected)
    std::cerr << "note: phi(a, a0) = " << format_value(traj.correction_value)
              << " != 0; solved the corrected equation phi(t,x) - exp(-lambda*(t-a))*phi(a,a0)\n";
  std::cerr << "segments=" << traj.picard_iters.size() << " max_picard_iters=" << max_iters
            << " max_residual=" << format_value(traj.max_residual)
            << " segment_join_check=" << format_value(join) << "\n";
  return kOk;
}

int cmd_ml(double beta, double z) {
  std::cout << format_value(mittag_leffler_1(MLArg(beta, z))) << "\n";
  return kOk;
}

int cmd_verify(const std::string& suite) {
  using SuiteFn = std::vector<verify::CheckResult> (*)(std::ostream&);
  const std::vector<std::pair<std::string, SuiteFn>> all = {
      {"ops", verify::suite_ops},
      {"catalog", verify::suite_catalog},
      {"solver", verify::suite_solver},
      {"limits", verify::suite_limits},
  };

  int failed = 0, total = 0;
  for (const auto& [name, fn] : all) {
    if (suite != "all" && suite != name) continue;
    for (const auto& r : fn(std::cout)) {
      ++total;
      if (!r.pass) ++failed;
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
      if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
      std::cout << "\n";
    }
  }
  std::cout << (failed ? "FAILED: " : "OK: ") << (total - failed) << "/" << total
            << " checks passed\n";
  return failed ? kVerifyFailure : kOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Caputo-Fabrizio fractional calculus toolkit"};
  app.require_subcommand(1);

  // ml
  double ml_beta = 1.0, ml_z = 0.0;
  CLI::App* ml = app.add_subcommand("ml", "evaluate the Mittag-Leffler function E_{1,beta}(z)");
  ml->add_option("--beta", ml_beta, "second parameter (> 0)")->required();
  ml->add_option("--z", ml_z, "argument")->required();

  // deriv
  DerivArgs deriv;
  CLI::App* dv = app.add_subcommand("deriv", "emit a CF-derivative trace as CSV (t,value)");
  dv->add_option("--func", deriv.func,
                 "function: power:B | monomial:M | exp:C | sin | cos | const:C")->required();
  dv->add_option("--alpha", deriv.alpha, "fractional order in (0,1)")->required();
  dv->add_option("--a", deriv.a, "lower limit a");
  dv->add_option("--t0", deriv.t0, "first output node")->required();
  dv->add_option("--t1", deriv.t1, "last output node")->required();
  dv->add_option("--dt", deriv.dt, "output step")->required();
  dv->add_option("--method", deriv.method, "analytic | grid | oracle");
  dv->add_option("--out", deriv.out, "write CSV here instead of stdout");

  // solve
  SolveArgs solve;
  CLI::App* sv = app.add_subcommand("solve", "solve D^alpha f = phi(t,f), f(a)=a0; CSV (t,value,segment)");
  sv->add_option("--rhs", solve.rhs, "right-hand side phi(t,x)")->required();
  sv->add_option("--alpha", solve.alpha, "fractional order in (0,1)")->required();
  sv->add_option("--a", solve.a, "initial time");
  sv->add_option("--a0", solve.a0, "initial value f(a)");
  auto* lopt = sv->add_option("--lipschitz", solve.lipschitz,
                              "Lipschitz constant of phi in x (estimated when absent)");
  sv->add_option("--t-end", solve.t_end, "solve horizon")->required();
  sv->add_option("--dt", solve.dt, "inner grid step")->required();
  sv->add_option("--segment-fraction", solve.segment_fraction,
                 "fraction of the contraction window per segment, in (0,1)");
  sv->add_option("--picard-tol", solve.picard_tol, "fixed-point sup-norm tolerance");
  sv->add_flag("--auto-correct", solve.auto_correct,
               "when phi(a,a0) != 0, solve the corrected equation instead of failing");
  sv->add_option("--out", solve.out, "write CSV here instead of stdout");

  // verify
  std::string suite = "all";
  CLI::App* vf = app.add_subcommand("verify", "run the invariant suites");
  vf->add_option("--suite", suite, "ops | catalog | solver | limits | all")
      ->check(CLI::IsMember({"ops", "catalog", "solver", "limits", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (ml->parsed()) {
      if (!(ml_beta > 0.0)) throw std::domain_error("beta must be > 0");
      return cmd_ml(ml_beta, ml_z);
    }
    if (dv->parsed()) return cmd_deriv(deriv);
    if (sv->parsed()) {
      solve.lipschitz_given = lopt->count() > 0;
      return cmd_solve(solve);
    }
    if (vf->parsed()) return cmd_verify(suite);
  } catch (const expr::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {  // invalid_argument, domain_error
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {  // solver/oracle/eval failures
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}

}  // namespace cfkit::cli
