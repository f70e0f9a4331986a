#include "ahlab/sphere_geometry.hpp"

#include <cmath>
#include <numbers>

#include "ahlab/errors.hpp"
#include "ahlab/numerics.hpp"

namespace ahlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * kPi;
constexpr double kSixteenPi = 16.0 * kPi;

double kappa(const RadialMetric& metric) {
  return metric.background() == Background::hyperbolic ? 1.0 : 0.0;
}

// (Ric(ν) + |A|^2) s^2 = 2 + 2 mu' - 6 mu / s; the background terms cancel.
double stability_density_scaled(const RadialMetric& metric, double s) {
  return 2.0 + 2.0 * metric.mass_aspect_prime(s) - 6.0 * metric.mass_aspect(s) / s;
}

}  // namespace

SphereGeometry sphere_data(const RadialMetric& metric, double s) {
  metric.require_domain(s, "sphere_data");
  const double k = kappa(metric);
  const double mu = metric.mass_aspect(s);
  const double mu_prime = metric.mass_aspect_prime(s);
  const double f = metric.f(s);
  const double s2 = s * s;

  SphereGeometry g;
  g.s = s;
  g.area = kFourPi * s2;
  g.mean_curvature = 2.0 * std::sqrt(f) / s;
  g.traceless_norm_sq = 0.0;
  g.second_fund_norm_sq = 2.0 * f / s2;
  g.scalar_curvature = scalar_curvature(metric, s);
  g.ricci_normal = -2.0 * k + 2.0 * mu_prime / s2 - 2.0 * mu / (s2 * s);
  g.gauss_curvature = 1.0 / s2;
  // H^2 - 4 = 4 (f - s^2) / s^2 with f - s^2 = 1 + (kappa - 1) s^2 - 2 mu / s.
  g.mean_curvature_sq_excess = 4.0 * (1.0 + (k - 1.0) * s2 - metric.f_deficit(s)) / s2;
  g.hawking_mass = hawking_mass(g);
  return g;
}

double hawking_mass(const SphereGeometry& geom) {
  const double integral = geom.area * geom.mean_curvature_sq_excess;
  return std::sqrt(geom.area) / std::pow(kSixteenPi, 1.5) * (kSixteenPi - integral);
}

double hawking_mass(const RadialMetric& metric, double s, HawkingMethod method) {
  const SphereGeometry geom = sphere_data(metric, s);
  if (method == HawkingMethod::closed_form) return hawking_mass(geom);

  // Round induced metric: dμ = s^2 sinθ dθ dφ.
  const double density = geom.mean_curvature_sq_excess;
  auto over_phi = [&](double theta) {
    auto integrand = [&](double) { return density * s * s * std::sin(theta); };
    return numerics::integrate(integrand, 0.0, 2.0 * kPi, 1e-13).value;
  };
  const double integral = numerics::integrate(over_phi, 0.0, kPi, 1e-12).value;
  return std::sqrt(geom.area) / std::pow(kSixteenPi, 1.5) * (kSixteenPi - integral);
}

double gauss_equation_residual(const SphereGeometry& geom) {
  const double h = geom.mean_curvature;
  return geom.gauss_curvature - (geom.scalar_curvature / 2.0 - geom.ricci_normal + h * h / 4.0 -
                                 geom.traceless_norm_sq / 2.0);
}

double stability_total(const RadialMetric& metric, double s) {
  metric.require_domain(s, "stability_total");
  return kFourPi * stability_density_scaled(metric, s);
}

double stability_genus_bound(int genus) {
  if (genus < 0) throw DomainError("genus must be non-negative");
  return kFourPi * genus + 12.0 * kPi;
}

std::vector<JacobiMode> jacobi_spectrum(const RadialMetric& metric, double s, int l_max) {
  if (l_max < 0) throw DomainError("jacobi_spectrum: l_max must be non-negative");
  metric.require_domain(s, "jacobi_spectrum");
  const double potential = stability_density_scaled(metric, s);
  std::vector<JacobiMode> modes;
  modes.reserve(static_cast<std::size_t>(l_max) + 1);
  for (int l = 0; l <= l_max; ++l) {
    const double ll = static_cast<double>(l) * (l + 1);
    modes.push_back({l, (ll - potential) / (s * s)});
  }
  return modes;
}

double gauss_bonnet_total(const RadialMetric& metric, double s) {
  const SphereGeometry geom = sphere_data(metric, s);
  return geom.area * geom.gauss_curvature;
}

}  // namespace ahlab
