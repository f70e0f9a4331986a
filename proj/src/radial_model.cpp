#include "ahlab/radial_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "ahlab/errors.hpp"

namespace ahlab {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(fmt::format("{} must be finite", what));
}

// Positive root of s^3 + s - 2m (the AdS-Schwarzschild horizon).
double ads_horizon(double m) {
  if (m <= 0.0) return 0.0;
  return numerics::find_root([m](double s) { return s * s * s + s - 2.0 * m; }, 0.0,
                             std::max(1.0, 2.0 * m), std::numeric_limits<double>::min());
}

}  // namespace

double RadialMetric::exterior_mass_aspect(double s) const {
  double mu = mass_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const double k = static_cast<double>(i + 2);
    mu -= 0.5 * coeffs_[i] * std::pow(s, 1.0 - k);
  }
  return mu;
}

double RadialMetric::exterior_mass_aspect_prime(double s) const {
  double d = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const double k = static_cast<double>(i + 2);
    d += 0.5 * (k - 1.0) * coeffs_[i] * std::pow(s, -k);
  }
  return d;
}

double RadialMetric::exterior_f(double s) const {
  return 1.0 + kappa() * s * s - 2.0 * exterior_mass_aspect(s) / s;
}

bool RadialMetric::inside_fill(double s) const noexcept {
  return interior_ == Interior::filled && s < fill_radius_;
}

double RadialMetric::volume_origin() const noexcept {
  return interior_ == Interior::filled ? 0.0 : core_radius_;
}

bool RadialMetric::in_domain(double s) const noexcept {
  return std::isfinite(s) && s > volume_origin() && s > 0.0;
}

void RadialMetric::require_domain(double s, const char* what) const {
  if (!in_domain(s)) {
    throw DomainError(fmt::format("{}: area radius s = {:.17g} is outside the model (s must exceed {:.17g})",
                                  what, s, volume_origin()));
  }
}

double RadialMetric::mass_aspect(double s) const {
  if (inside_fill(s)) {
    const double q = s / fill_radius_;
    return exterior_mass_aspect(fill_radius_) * q * q * q;
  }
  return exterior_mass_aspect(s);
}

double RadialMetric::mass_aspect_prime(double s) const {
  if (inside_fill(s)) {
    return 3.0 * exterior_mass_aspect(fill_radius_) * s * s /
           (fill_radius_ * fill_radius_ * fill_radius_);
  }
  return exterior_mass_aspect_prime(s);
}

double RadialMetric::f_deficit(double s) const {
  if (inside_fill(s)) {
    return 2.0 * exterior_mass_aspect(fill_radius_) * s * s /
           (fill_radius_ * fill_radius_ * fill_radius_);
  }
  return 2.0 * exterior_mass_aspect(s) / s;
}

double RadialMetric::f(double s) const { return 1.0 + kappa() * s * s - f_deficit(s); }

double RadialMetric::f_prime(double s) const {
  if (inside_fill(s)) {
    return 2.0 * kappa() * s -
           4.0 * exterior_mass_aspect(fill_radius_) * s / (fill_radius_ * fill_radius_ * fill_radius_);
  }
  return 2.0 * kappa() * s - 2.0 * mass_aspect_prime(s) / s + 2.0 * mass_aspect(s) / (s * s);
}

double RadialMetric::inverse_sqrt_excess(double s) const {
  const double a = f(s);
  const double b = 1.0 + s * s;
  const double ra = std::sqrt(a);
  const double rb = std::sqrt(b);
  return f_deficit(s) / (ra * rb * (ra + rb));
}

double RadialMetric::horizon_mapped_excess(double w) const {
  // f(core) = 0, so f(core + w^2) = w^2 q with q the divided difference
  //   kappa (u + c) + 2m/(uc) + sum_k c_k sum_{i=1..k} u^{-i} c^{-(k+1-i)},
  // which has no cancellation as w -> 0.
  const double c = core_radius_;
  const double u = c + w * w;
  double q = kappa() * (u + c) + 2.0 * mass_ / (u * c);
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    const int k = static_cast<int>(n) + 2;
    double sum = 0.0;
    for (int i = 1; i <= k; ++i) sum += std::pow(u, -i) * std::pow(c, -(k + 1 - i));
    q += coeffs_[n] * sum;
  }
  return 2.0 / std::sqrt(q) - 2.0 * w / std::sqrt(1.0 + u * u);
}

bool RadialMetric::is_exactly_hyperbolic() const noexcept {
  return background_ == Background::hyperbolic && mass_ == 0.0 &&
         std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

std::string RadialMetric::describe() const {
  std::string base;
  if (background_ == Background::flat) {
    base = "flat_test_profile";
  } else if (is_exactly_hyperbolic()) {
    base = "hyperbolic";
  } else if (coeffs_.empty()) {
    base = fmt::format("ads_schwarzschild(m={:g})", mass_);
  } else {
    base = fmt::format("perturbed(m={:g}, c=[{}])", mass_, fmt::join(coeffs_, ", "));
  }
  if (interior_ == Interior::filled) base += fmt::format(" filled(S={:g})", fill_radius_);
  return base;
}

RadialMetric make_hyperbolic() { return RadialMetric{}; }

RadialMetric make_ads_schwarzschild(double m) {
  require_finite(m, "mass");
  if (!(m > 0.0)) throw DomainError("AdS-Schwarzschild mass must be positive");
  RadialMetric metric;
  metric.mass_ = m;
  metric.core_radius_ = ads_horizon(m);
  return metric;
}

RadialMetric make_perturbed(double m, std::span<const double> coeffs) {
  require_finite(m, "mass");
  if (m < 0.0) throw DomainError("mass must be non-negative");
  for (double c : coeffs) require_finite(c, "perturbation coefficient");

  const bool no_tail = std::all_of(coeffs.begin(), coeffs.end(), [](double c) { return c == 0.0; });
  if (no_tail) return m == 0.0 ? make_hyperbolic() : make_ads_schwarzschild(m);

  RadialMetric metric;
  metric.mass_ = m;
  metric.coeffs_.assign(coeffs.begin(), coeffs.end());

  // Scan inwards from a radius where f is certainly positive.
  double scale = 2.0 + 2.0 * m;
  for (double c : coeffs) scale += std::abs(c);
  double core = 0.0;
  double s = scale;
  while (s > 1e-8) {
    const double next = 0.98 * s;
    if (metric.exterior_f(next) <= 0.0) {
      core = numerics::find_root([&](double x) { return metric.exterior_f(x); }, next, s,
                                 std::numeric_limits<double>::min());
      break;
    }
    s = next;
  }
  metric.core_radius_ = core;

  const double reference = 2.0 * std::max(1.0, ads_horizon(m));
  if (core >= reference) {
    throw DomainError(fmt::format(
        "perturbation leaves no positive domain near s = {:g} (f({:g}) = {:.6g}, core radius {:.6g})",
        reference, reference, metric.exterior_f(reference), core));
  }
  return metric;
}

RadialMetric make_flat_test_profile() {
  RadialMetric metric;
  metric.background_ = Background::flat;
  return metric;
}

RadialMetric with_filled_interior(const RadialMetric& metric, double fill_radius) {
  require_finite(fill_radius, "fill radius");
  if (!(fill_radius > metric.core_radius_) || !(fill_radius > 0.0)) {
    throw DomainError(fmt::format("fill radius {:g} must exceed the core radius {:g}", fill_radius,
                                  metric.core_radius_));
  }
  RadialMetric filled = metric;
  filled.interior_ = Interior::filled;
  filled.fill_radius_ = fill_radius;
  return filled;
}

RadialMetric with_filled_interior(const RadialMetric& metric) {
  return with_filled_interior(metric, metric.core_radius() + kDefaultFillOffset);
}

double scalar_curvature(const RadialMetric& metric, double s) {
  metric.require_domain(s, "scalar_curvature");
  const double kappa = metric.background() == Background::hyperbolic ? 1.0 : 0.0;
  return -6.0 * kappa + 4.0 * metric.mass_aspect_prime(s) / (s * s);
}

numerics::QuadResult rho_offset_detailed(const RadialMetric& metric, double s, double abs_tol) {
  if (metric.background() != Background::hyperbolic) {
    throw DomainError("geodesic radius is only normalised for asymptotically hyperbolic models");
  }
  if (!std::isfinite(s) || s < metric.volume_origin() || s < 0.0) {
    throw DomainError(fmt::format("rho_offset: s = {:.17g} is outside the model", s));
  }
  if (metric.is_exactly_hyperbolic()) return {0.0, 0.0, 1};

  auto excess = [&](double u) { return metric.inverse_sqrt_excess(u); };
  const double inf = std::numeric_limits<double>::infinity();
  numerics::QuadResult total{};
  auto add = [&total](const numerics::QuadResult& part) {
    total.value += part.value;
    total.error_bound += part.error_bound;
    total.evaluations += part.evaluations;
  };
  double start = s;

  if (metric.interior() == Interior::filled && s < metric.fill_radius()) {
    add(numerics::integrate(excess, s, metric.fill_radius(), abs_tol / 2));
    start = metric.fill_radius();
  } else if (metric.interior() == Interior::horizon && metric.core_radius() > 0.0 &&
             s < metric.core_radius() + 1.0) {
    // u = core + w^2 removes the inverse square-root singularity at the horizon.
    const double core = metric.core_radius();
    auto mapped = [&](double w) { return metric.horizon_mapped_excess(w); };
    add(numerics::integrate(mapped, std::sqrt(s - core), 1.0, abs_tol / 2));
    start = core + 1.0;
  }
  add(numerics::integrate(excess, start, inf, abs_tol / 2));
  return total;
}

double rho_offset(const RadialMetric& metric, double s, double abs_tol) {
  return rho_offset_detailed(metric, s, abs_tol).value;
}

double rho_from_s(const RadialMetric& metric, double s, double abs_tol) {
  return std::asinh(s) - rho_offset(metric, s, abs_tol);
}

double rho_floor(const RadialMetric& metric, double abs_tol) {
  return rho_from_s(metric, metric.volume_origin(), abs_tol);
}

double s_from_rho(const RadialMetric& metric, double rho, double abs_tol) {
  require_finite(rho, "rho");
  const double floor = rho_floor(metric, abs_tol);
  if (rho < floor) {
    throw DomainError(fmt::format("rho = {:.17g} lies below the model's minimum {:.17g}", rho, floor));
  }
  if (metric.is_exactly_hyperbolic()) return std::sinh(rho);
  if (rho == floor) return metric.volume_origin();

  const double lo = metric.volume_origin();
  double hi = std::sinh(std::max(rho, 0.0)) + 1.0;
  while (rho_from_s(metric, hi, abs_tol) <= rho) hi *= 2.0;
  return numerics::find_root([&](double s) { return rho_from_s(metric, s, abs_tol) - rho; }, lo, hi,
                             std::numeric_limits<double>::min());
}

ValidationReport validate_ah(const RadialMetric& metric, std::span<const double> s_grid) {
  if (s_grid.empty()) throw DomainError("validate_ah: empty grid");
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    metric.require_domain(s_grid[i], "validate_ah");
    if (i > 0 && !(s_grid[i] > s_grid[i - 1])) {
      throw DomainError("validate_ah: grid must be strictly increasing");
    }
  }

  ValidationReport report;
  report.min_scalar_curvature_excess = std::numeric_limits<double>::infinity();
  for (double s : s_grid) {
    report.min_scalar_curvature_excess =
        std::min(report.min_scalar_curvature_excess, scalar_curvature(metric, s) + 6.0);
  }

  // Fit the rational tail on the two outermost grid points where it is non-zero.
  auto tail = [&](double s) {
    double t = 0.0;
    const auto coeffs = metric.perturbation_coeffs();
    for (std::size_t i = 0; i < coeffs.size(); ++i) t += coeffs[i] * std::pow(s, -double(i + 2));
    return t;
  };
  report.decay_exponent_estimate = -std::numeric_limits<double>::infinity();
  std::vector<double> support;
  for (auto it = s_grid.rbegin(); it != s_grid.rend() && support.size() < 2; ++it) {
    if (tail(*it) != 0.0) support.push_back(*it);
  }
  if (support.size() == 2) {
    report.decay_exponent_estimate = std::log(std::abs(tail(support[0]) / tail(support[1]))) /
                                     std::log(support[0] / support[1]);
  }

  bool ok = true;
  if (metric.background() != Background::hyperbolic) {
    ok = false;
    report.messages.emplace_back("background is not hyperbolic: f(s)/s^2 does not tend to 1");
  }
  if (report.min_scalar_curvature_excess < -kScalarCurvatureSlack) {
    ok = false;
    report.messages.push_back(fmt::format("scalar curvature drops below -6: min(R + 6) = {:.6e}",
                                          report.min_scalar_curvature_excess));
  }
  if (report.decay_exponent_estimate > -1.9) {
    ok = false;
    report.messages.push_back(fmt::format("tail decays too slowly: fitted exponent {:.3f}",
                                          report.decay_exponent_estimate));
  }
  if (ok) report.messages.emplace_back("R >= -6 on the grid and the tail decays like s^-2 or faster");
  report.is_ah = ok;
  return report;
}

}  // namespace ahlab
