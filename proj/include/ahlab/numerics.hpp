#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ahlab::numerics {

/// Default tolerances shared by every kernel. CLI flags `--quad-tol` and
/// `--ode-tol` override the first two.
struct Tolerances {
  double quad_abs = 1e-10;
  double ode_rel = 1e-9;
  double root = 1e-12;
};

struct QuadResult {
  double value = 0.0;
  double error_bound = 0.0;
  int evaluations = 0;
};

using ScalarFn = std::function<double(double)>;
using OdeRhs = std::function<double(double, double)>;

/// Adaptive 15-point Gauss-Kronrod quadrature of `fn` over [a, b].
///
/// `b` may be +infinity; the tail is mapped onto a finite interval with
/// u = 1/w. Integrable endpoint singularities are tolerated because the rule
/// never samples the endpoints. Throws NumericError when the error bound
/// cannot be pushed below `abs_tol` within the subdivision budget.
QuadResult integrate(const ScalarFn& fn, double a, double b, double abs_tol = 1e-10);

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
};

/// Integrates y' = rhs(x, y) with an embedded Dormand-Prince 5(4) pair and
/// reports y at every abscissa of `xs` (strictly monotone, xs[0] is the
/// initial point carrying y0).
///
/// The right-hand side may throw RhsDomainError to signal that the solution
/// left its domain; that error propagates unchanged.
std::vector<CurvePoint> solve_ode(const OdeRhs& rhs, double y0, std::span<const double> xs,
                                  double rel_tol = 1e-9);

/// Same, reporting the solution at every accepted step between x0 and x1.
std::vector<CurvePoint> solve_ode(const OdeRhs& rhs, double y0, double x0, double x1,
                                  double rel_tol = 1e-9);

/// Bracketed root of a monotone function: bisection until the bracket is no
/// wider than `tol` (or no longer representable), then one regula-falsi pass.
double find_root(const ScalarFn& fn, double lo, double hi, double tol = 1e-12);

std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> logspace(double lo, double hi, int n);

}  // namespace ahlab::numerics
