#pragma once

#include <vector>

#include "ahlab/radial_model.hpp"

namespace ahlab {

/// Invariants of the centred coordinate sphere of area radius s.
struct SphereGeometry {
  double s = 0.0;
  double area = 0.0;
  double mean_curvature = 0.0;
  /// |Å|^2, zero because centred spheres are umbilic.
  double traceless_norm_sq = 0.0;
  /// |A|^2 = H^2 / 2.
  double second_fund_norm_sq = 0.0;
  double ricci_normal = 0.0;
  /// Intrinsic curvature of the induced round metric, 1/s^2.
  double gauss_curvature = 0.0;
  double scalar_curvature = 0.0;
  double hawking_mass = 0.0;
  /// H^2 - 4 computed from the mass aspect, so the Hawking mass keeps full
  /// precision at large s.
  double mean_curvature_sq_excess = 0.0;
};

SphereGeometry sphere_data(const RadialMetric& metric, double s);

/// m_H = |Σ|^{1/2} (16π)^{-3/2} (16π - ∫(H^2 - 4)), using that the integrand
/// is constant on a centred sphere.
double hawking_mass(const SphereGeometry& geom);

enum class HawkingMethod { closed_form, quadrature };

/// Hawking mass of the sphere at s. `quadrature` integrates H^2 - 4 over the
/// sphere in (theta, phi) instead of using the constant-integrand shortcut;
/// it is kept as a consistency check.
double hawking_mass(const RadialMetric& metric, double s, HawkingMethod method);

/// K - (R/2 - Ric(ν) + H^2/4 - |Å|^2/2).
double gauss_equation_residual(const SphereGeometry& geom);

/// ∫_Σ (Ric(ν) + |A|^2), the stability form evaluated on constants.
double stability_total(const RadialMetric& metric, double s);

/// Bound on stability_total for stable surfaces of genus g: 4πg + 12π.
double stability_genus_bound(int genus);

struct JacobiMode {
  int l = 0;
  double eigenvalue = 0.0;
};

/// Eigenvalues l(l+1)/s^2 - (Ric(ν) + |A|^2) of the Jacobi quadratic form on
/// the spherical harmonics of degree l = 0..l_max.
std::vector<JacobiMode> jacobi_spectrum(const RadialMetric& metric, double s, int l_max);

/// area · K, which is 4π(1 - genus) = 4π for every centred sphere.
double gauss_bonnet_total(const RadialMetric& metric, double s);

}  // namespace ahlab
