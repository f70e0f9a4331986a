#include "ahlab/imcf_flow.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

// Boost 1.74's pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <fmt/format.h>

#include "ahlab/errors.hpp"
#include "ahlab/profiles.hpp"
#include "ahlab/sphere_geometry.hpp"

namespace ahlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSixteenPi = 16.0 * kPi;

std::vector<double> time_grid(double t_max, double dt) {
  const auto steps = static_cast<long>(std::floor(t_max / dt * (1.0 + 1e-12)));
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(steps) + 2);
  for (long i = 0; i <= steps; ++i) ts.push_back(static_cast<double>(i) * dt);
  if (t_max - ts.back() > 1e-12 * t_max) ts.push_back(t_max);
  return ts;
}

std::vector<double> comparison_grid(double v0, double v_end, int n) {
  if (n < 2) throw DomainError("comparison_ode: need at least two grid points");
  return v0 > 0.0 ? numerics::logspace(v0, v_end, n) : numerics::linspace(v0, v_end, n);
}

ComparisonCurve integrate_comparison(double b0, const std::function<double(double)>& mass_at,
                                     double v0, double v_end, int n, double rel_tol) {
  if (!std::isfinite(b0) || !(b0 > 0.0)) throw DomainError("comparison_ode: B0 must be positive");
  if (!std::isfinite(v0) || v0 < 0.0) throw DomainError("comparison_ode: v0 must be >= 0");
  if (!std::isfinite(v_end) || !(v_end > v0)) throw DomainError("comparison_ode: v_end must exceed v0");

  ComparisonCurve curve;
  curve.v_grid = comparison_grid(v0, v_end, n);
  auto rhs = [&](double v, double b) { return comparison_rhs(b, mass_at(v), v); };
  const auto solution = numerics::solve_ode(rhs, b0, curve.v_grid, rel_tol);
  curve.b_values.reserve(solution.size());
  curve.hyperbolic_values.reserve(solution.size());
  for (const auto& point : solution) {
    curve.b_values.push_back(point.y);
    curve.hyperbolic_values.push_back(point.x > 0.0 ? hyperbolic_profile(point.x) : 0.0);
  }
  return curve;
}

}  // namespace

std::vector<FlowSample> flow_spheres(const RadialMetric& metric, double s0, double t_max, double dt,
                                     const numerics::Tolerances& tol) {
  if (!std::isfinite(dt) || !(dt > 0.0)) throw DomainError("flow_spheres: dt must be positive");
  if (!std::isfinite(t_max) || t_max < 0.0) throw DomainError("flow_spheres: t_max must be >= 0");
  // With a filled interior the flow may start inside the former horizon.
  if (!metric.in_domain(s0)) {
    throw DomainError(fmt::format("flow_spheres: s0 = {:.17g} is outside the model (s must exceed {:.17g})",
                                  s0, metric.volume_origin()));
  }

  auto speed = [&metric](double, double s) {
    const double root_f = std::sqrt(metric.f(s));
    return root_f / (2.0 * root_f / s);  // sqrt(f) / H
  };
  const std::vector<double> ts = time_grid(t_max, dt);
  std::vector<numerics::CurvePoint> radii;
  if (ts.size() == 1) {
    radii.push_back({0.0, s0});
  } else {
    radii = numerics::solve_ode(speed, s0, ts, tol.ode_rel);
  }

  auto density = [&metric](double u) { return 4.0 * kPi * u * u / std::sqrt(metric.f(u)); };
  std::vector<FlowSample> flow;
  flow.reserve(radii.size());
  double volume = model_volume(metric, s0, tol.quad_abs);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double s = radii[i].y;
    if (i > 0) {
      const double scale = std::max(1.0, volume);
      volume += numerics::integrate(density, radii[i - 1].y, s, tol.quad_abs * scale).value;
    }
    const SphereGeometry geom = sphere_data(metric, s);
    flow.push_back({radii[i].x, s, geom.area, volume, geom.hawking_mass, geom.mean_curvature});
  }
  return flow;
}

struct FlowTimeline::Impl {
  boost::math::interpolators::pchip<std::vector<double>> v_of_t;
};

FlowTimeline::FlowTimeline(std::span<const FlowSample> flow) {
  if (flow.size() < 4) throw DomainError("flow timeline needs at least four samples");
  std::vector<double> ts;
  std::vector<double> vs;
  ts.reserve(flow.size());
  vs.reserve(flow.size());
  for (const auto& sample : flow) {
    if (!ts.empty() && !(sample.t > ts.back() && sample.enclosed_volume > vs.back())) {
      throw DomainError("flow samples must be strictly increasing in t and volume");
    }
    ts.push_back(sample.t);
    vs.push_back(sample.enclosed_volume);
  }
  t_min_ = ts.front();
  t_max_ = ts.back();
  v_min_ = vs.front();
  v_max_ = vs.back();
  impl_ = std::make_unique<Impl>(Impl{{std::move(ts), std::move(vs)}});
}

FlowTimeline::~FlowTimeline() = default;
FlowTimeline::FlowTimeline(FlowTimeline&&) noexcept = default;
FlowTimeline& FlowTimeline::operator=(FlowTimeline&&) noexcept = default;

double FlowTimeline::v_of_t(double t) const {
  if (!(t >= t_min_ && t <= t_max_)) {
    throw DomainError(fmt::format("t = {:.17g} outside the flow's time range", t));
  }
  return impl_->v_of_t(t);
}

double FlowTimeline::t_of_v(double v) const {
  if (!(v >= v_min_ && v <= v_max_)) {
    throw DomainError(fmt::format("v = {:.17g} outside the flow's volume range [{:.17g}, {:.17g}]", v,
                                  v_min_, v_max_));
  }
  if (v == v_min_) return t_min_;
  if (v == v_max_) return t_max_;
  return numerics::find_root([&](double t) { return impl_->v_of_t(t) - v; }, t_min_, t_max_, 0x1p-60);
}

double t_of_v(std::span<const FlowSample> flow, double v) { return FlowTimeline(flow).t_of_v(v); }

double lipschitz_check(std::span<const FlowSample> flow) {
  if (flow.size() < 3) throw DomainError("lipschitz_check needs at least three samples");
  const std::size_t n = flow.size();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    // Three-point derivative of v(t) on the (possibly non-uniform) grid.
    const std::size_t a = i == 0 ? 0 : (i == n - 1 ? n - 3 : i - 1);
    const double t0 = flow[a].t, t1 = flow[a + 1].t, t2 = flow[a + 2].t;
    const double v0 = flow[a].enclosed_volume, v1 = flow[a + 1].enclosed_volume,
                 v2 = flow[a + 2].enclosed_volume;
    const double x = flow[i].t;
    const double dv_dt = v0 * (2 * x - t1 - t2) / ((t0 - t1) * (t0 - t2)) +
                         v1 * (2 * x - t0 - t2) / ((t1 - t0) * (t1 - t2)) +
                         v2 * (2 * x - t0 - t1) / ((t2 - t0) * (t2 - t1));
    const double area = flow[i].area;
    const double h = flow[i].mean_curvature;
    const double bound = std::sqrt(h * h * area) * std::pow(area, -1.5);
    worst = std::max(worst, 1.0 / dv_dt - bound);
  }
  return worst;
}

double comparison_rhs(double b, double m, double v) {
  const double root_b = std::sqrt(b);
  const double radicand = kSixteenPi + 4.0 * b - std::pow(kSixteenPi, 1.5) * m / root_b;
  if (!(radicand >= 0.0) || !(b > 0.0)) {
    throw RhsDomainError(
        fmt::format("comparison ODE radicand {:.6g} < 0 at v = {:.17g} (B = {:.6g}, m = {:.6g})",
                    radicand, v, b, m),
        v);
  }
  return std::sqrt(radicand) / root_b;
}

ComparisonCurve comparison_ode(double b0, double mass_floor, double v0, double v_end, int n,
                               double rel_tol) {
  if (!std::isfinite(mass_floor) || mass_floor < 0.0) {
    throw DomainError("comparison_ode: mass floor must be >= 0");
  }
  return integrate_comparison(b0, [mass_floor](double) { return mass_floor; }, v0, v_end, n, rel_tol);
}

ComparisonCurve comparison_ode(double b0, std::span<const FlowSample> mass_curve, double v0,
                               double v_end, int n, double rel_tol) {
  if (mass_curve.empty()) throw DomainError("comparison_ode: empty mass curve");
  std::vector<double> vs;
  std::vector<double> ms;
  for (const auto& sample : mass_curve) {
    if (!vs.empty() && !(sample.enclosed_volume > vs.back())) {
      throw DomainError("comparison_ode: mass curve volumes must increase");
    }
    vs.push_back(sample.enclosed_volume);
    ms.push_back(sample.hawking_mass);
  }
  auto mass_at = [&](double v) {
    if (v <= vs.front()) return ms.front();
    if (v >= vs.back()) return ms.back();
    const auto it = std::upper_bound(vs.begin(), vs.end(), v);
    const auto j = static_cast<std::size_t>(it - vs.begin());
    const double w = (v - vs[j - 1]) / (vs[j] - vs[j - 1]);
    return ms[j - 1] + w * (ms[j] - ms[j - 1]);
  };
  return integrate_comparison(b0, mass_at, v0, v_end, n, rel_tol);
}

}  // namespace ahlab
