#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ahlab/numerics.hpp"
#include "ahlab/radial_model.hpp"

namespace ahlab {

/// One centred sphere along the inverse mean curvature flow.
struct FlowSample {
  double t = 0.0;
  double s = 0.0;
  double area = 0.0;
  /// Volume enclosed by the sphere, measured from the model's volume origin.
  double enclosed_volume = 0.0;
  double hawking_mass = 0.0;
  double mean_curvature = 0.0;
};

/// Flows the centred sphere s0 by IMCF, sampling at t = 0, dt, 2dt, ... up to
/// t_max. In the radial reduction ds/dt = sqrt(f)/H, which is integrated
/// numerically; volumes are accumulated by quadrature between samples.
std::vector<FlowSample> flow_spheres(const RadialMetric& metric, double s0, double t_max, double dt,
                                     const numerics::Tolerances& tol = {});

/// Monotone (PCHIP) interpolation of v(t) along a flow, inverted by root
/// finding for t(v).
class FlowTimeline {
 public:
  explicit FlowTimeline(std::span<const FlowSample> flow);
  ~FlowTimeline();
  FlowTimeline(FlowTimeline&&) noexcept;
  FlowTimeline& operator=(FlowTimeline&&) noexcept;

  [[nodiscard]] double v_of_t(double t) const;
  [[nodiscard]] double t_of_v(double v) const;
  [[nodiscard]] double v_min() const noexcept { return v_min_; }
  [[nodiscard]] double v_max() const noexcept { return v_max_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double t_min_ = 0.0;
  double t_max_ = 0.0;
  double v_min_ = 0.0;
  double v_max_ = 0.0;
};

double t_of_v(std::span<const FlowSample> flow, double v);

/// max over samples of dt/dv - (∫H^2)^{1/2} Area^{-3/2}, with dt/dv taken from
/// second-order finite differences of the sampled volumes.
double lipschitz_check(std::span<const FlowSample> flow);

struct ComparisonCurve {
  std::vector<double> v_grid;
  std::vector<double> b_values;
  std::vector<double> hyperbolic_values;
};

/// dB/dv = B^{-1/2} (16π + 4B - (16π)^{3/2} m / B^{1/2})^{1/2}.
/// Throws RhsDomainError when the radicand is negative.
double comparison_rhs(double b, double m, double v);

/// Integrates the comparison ODE with m(v) == mass_floor from B(v0) = b0 and
/// reports B on n grid points in [v0, v_end] (log-spaced when v0 > 0).
ComparisonCurve comparison_ode(double b0, double mass_floor, double v0, double v_end, int n = 200,
                               double rel_tol = 1e-9);

/// Same with m(v) linearly interpolated from a flow's (volume, Hawking mass)
/// samples and held constant outside them.
ComparisonCurve comparison_ode(double b0, std::span<const FlowSample> mass_curve, double v0,
                               double v_end, int n = 200, double rel_tol = 1e-9);

}  // namespace ahlab
