#include "ahlab/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include "ahlab/errors.hpp"

namespace ahlab::numerics {

namespace {

constexpr int kMaxIntervals = 4000;
constexpr double kEps = std::numeric_limits<double>::epsilon();

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double l1;
};

// Boost 1.74 leaves the local Kronrod error of its adaptive driver unscaled by
// the half-width, so small panels never converge and wide ones under-report.
// Only the single-panel rule is taken from Boost; the error is rescaled here.
template <class Fn>
Panel kronrod_panel(Fn& fn, double a, double b) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = Kronrod::integrate(fn, a, b, 0, 0.0, &error, &l1);
  const double half = (b - a) / 2;
  return {a, b, value, error * half, l1};  // l1 comes back scaled
}

QuadResult integrate_finite(const ScalarFn& fn, double a, double b, double abs_tol) {
  int evaluations = 0;
  auto counted = [&](double x) {
    ++evaluations;
    const double y = fn(x);
    if (!std::isfinite(y)) {
      throw NumericError(fmt::format("integrand is not finite at x = {:.17g}", x));
    }
    return y;
  };

  // Globally adaptive bisection: always split the panel with the largest error.
  auto by_error = [](const Panel& x, const Panel& y) { return x.error < y.error; };
  std::vector<Panel> heap{kronrod_panel(counted, a, b)};
  double value = heap.front().value;
  double error = heap.front().error;
  double l1 = heap.front().l1;
  while (error > abs_tol && error > 128 * kEps * l1) {
    if (static_cast<int>(heap.size()) >= kMaxIntervals) {
      throw NumericError(fmt::format(
          "quadrature on [{:.6g}, {:.6g}] did not converge: error bound {:.3e} > {:.3e} after {} "
          "evaluations",
          a, b, error, abs_tol, evaluations));
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = worst.a + (worst.b - worst.a) / 2;
    if (!(mid > worst.a && mid < worst.b)) {
      throw NumericError(fmt::format("quadrature panel at {:.17g} cannot be split further", mid));
    }
    for (const Panel& half : {kronrod_panel(counted, worst.a, mid), kronrod_panel(counted, mid, worst.b)}) {
      heap.push_back(half);
      std::push_heap(heap.begin(), heap.end(), by_error);
    }
    // Re-sum rather than update incrementally so round-off cannot accumulate.
    value = error = l1 = 0.0;
    for (const Panel& p : heap) {
      value += p.value;
      error += p.error;
      l1 += p.l1;
    }
  }
  return {value, error, evaluations};
}

}  // namespace

QuadResult integrate(const ScalarFn& fn, double a, double b, double abs_tol) {
  if (!(abs_tol > 0.0)) throw DomainError("integrate: abs_tol must be positive");
  if (std::isnan(a) || std::isnan(b) || std::isinf(a)) {
    throw DomainError("integrate: limits must be finite (upper limit may be +inf)");
  }
  if (a > b) throw DomainError("integrate: lower limit exceeds upper limit");
  if (a == b) return {0.0, 0.0, 1};
  if (!std::isinf(b)) return integrate_finite(fn, a, b, abs_tol);

  // [a, inf): split at 1 when needed so that the w = 1/u image is bounded.
  QuadResult head{};
  double start = a;
  if (a < 1.0) {
    head = integrate_finite(fn, a, 1.0, abs_tol / 2);
    start = 1.0;
  }
  auto mapped = [&](double w) { return fn(1.0 / w) / (w * w); };
  const QuadResult tail = integrate_finite(mapped, 0.0, 1.0 / start, abs_tol / 2);
  return {head.value + tail.value, head.error_bound + tail.error_bound,
          head.evaluations + tail.evaluations};
}

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 1>;

auto make_system(const OdeRhs& rhs) {
  return [&rhs](const State& y, State& dydx, double x) {
    const double d = rhs(x, y[0]);
    if (!std::isfinite(d)) {
      throw RhsDomainError(fmt::format("ODE right-hand side not finite at x = {:.17g}", x), x);
    }
    dydx[0] = d;
  };
}

auto make_stepper(double rel_tol) {
  // Pure relative control; the absolute floor only guards y = 0.
  return odeint::make_controlled(rel_tol * 1e-12, rel_tol, odeint::runge_kutta_dopri5<State>());
}

void check_rel_tol(double rel_tol) {
  if (!(rel_tol > 0.0) || rel_tol >= 1.0) throw DomainError("solve_ode: rel_tol must lie in (0, 1)");
}

}  // namespace

std::vector<CurvePoint> solve_ode(const OdeRhs& rhs, double y0, std::span<const double> xs,
                                  double rel_tol) {
  check_rel_tol(rel_tol);
  if (xs.empty()) throw DomainError("solve_ode: empty output grid");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw DomainError("solve_ode: output grid must be increasing");
  }

  std::vector<CurvePoint> out;
  out.reserve(xs.size());
  State y{y0};
  if (xs.size() == 1) {
    out.push_back({xs[0], y0});
    return out;
  }
  const double dx0 = (xs.back() - xs.front()) * 1e-4;
  try {
    odeint::integrate_times(make_stepper(rel_tol), make_system(rhs), y, xs.begin(), xs.end(), dx0,
                            [&out](const State& state, double x) { out.push_back({x, state[0]}); },
                            odeint::max_step_checker(1'000'000));
  } catch (const odeint::step_adjustment_error& e) {
    throw NumericError(std::string("solve_ode: step-size underflow: ") + e.what());
  } catch (const odeint::no_progress_error& e) {
    throw NumericError(std::string("solve_ode: step budget exhausted: ") + e.what());
  }
  return out;
}

std::vector<CurvePoint> solve_ode(const OdeRhs& rhs, double y0, double x0, double x1,
                                  double rel_tol) {
  check_rel_tol(rel_tol);
  if (!(x1 > x0)) throw DomainError("solve_ode: x1 must exceed x0");
  std::vector<CurvePoint> out;
  State y{y0};
  try {
    odeint::integrate_adaptive(make_stepper(rel_tol), make_system(rhs), y, x0, x1,
                               (x1 - x0) * 1e-4,
                               [&out](const State& state, double x) { out.push_back({x, state[0]}); });
  } catch (const odeint::step_adjustment_error& e) {
    throw NumericError(std::string("solve_ode: step-size underflow: ") + e.what());
  }
  return out;
}

double find_root(const ScalarFn& fn, double lo, double hi, double tol) {
  if (!(hi > lo)) throw DomainError("find_root: bracket must satisfy lo < hi");
  if (!(tol > 0.0)) throw DomainError("find_root: tol must be positive");
  double f_lo = fn(lo);
  double f_hi = fn(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi) || std::isnan(f_lo) || std::isnan(f_hi)) {
    throw DomainError(fmt::format("find_root: no sign change on [{:.17g}, {:.17g}]", lo, hi));
  }

  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    const double f_mid = fn(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  const double x = lo - f_lo * (hi - lo) / (f_hi - f_lo);
  return std::clamp(x, lo, hi);
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw DomainError("linspace: n must be positive");
  if (n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > 0.0)) throw DomainError("logspace: endpoints must be positive");
  auto out = linspace(std::log(lo), std::log(hi), n);
  for (double& x : out) x = std::exp(x);
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace ahlab::numerics
