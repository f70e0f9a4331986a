#pragma once

#include <span>
#include <vector>

#include "ahlab/numerics.hpp"
#include "ahlab/radial_model.hpp"

namespace ahlab {

/// Volume of the hyperbolic geodesic ball of radius rho,
/// 4π (sinh²ρ/2 + 1/4 - ρ/2 - e^{-2ρ}/4).
double hyperbolic_volume(double rho);

/// Volume of the hyperbolic ball whose boundary has area 4π s^2.
double hyperbolic_volume_of_area_radius(double s);

/// Geodesic radius of the hyperbolic ball of volume v.
double hyperbolic_radius_for_volume(double v, double tol = 1e-12);

/// Isoperimetric profile of hyperbolic space, A_H(v) = 4π sinh²ρ_v.
double hyperbolic_profile(double v, double tol = 1e-12);

/// Volume enclosed by the centred sphere of area radius s, measured from the
/// model's volume origin: ∫ 4π u^2 f(u)^{-1/2} du.
///
/// Evaluated as the closed-form hyperbolic volume plus the integral of
/// 4π u^2 (f^{-1/2} - (1+u^2)^{-1/2}), which stays O(1) while the volume
/// itself grows like e^{2ρ}.
numerics::QuadResult model_volume_detailed(const RadialMetric& metric, double s,
                                           double abs_tol = 1e-10);
double model_volume(const RadialMetric& metric, double s, double abs_tol = 1e-10);

/// ∫_origin^s 4π u^2 (f^{-1/2} - (1+u^2)^{-1/2}) du - (hyperbolic volume of
/// area radius origin): model volume minus hyperbolic volume at equal s.
numerics::QuadResult volume_excess(const RadialMetric& metric, double s, double abs_tol = 1e-10);

/// Area radius s_v of the centred sphere enclosing volume v.
double sphere_radius_for_volume(const RadialMetric& metric, double v,
                                const numerics::Tolerances& tol = {});

/// Area of the centred sphere enclosing volume v. This is an upper bound for
/// the isoperimetric profile A_g(v).
double model_profile(const RadialMetric& metric, double v, const numerics::Tolerances& tol = {});

struct RenormVolumeResult {
  double value = 0.0;
  double truncation_rho = 0.0;
  /// Bound on |value - V| from the truncation at finite rho.
  double tail_estimate = 0.0;
  double quad_error = 0.0;
};

/// Truncated renormalised volume: model volume of {ρ <= truncation_rho}
/// minus the hyperbolic ball volume of the same radius.
RenormVolumeResult renormalized_volume(const RadialMetric& metric, double truncation_rho,
                                       const numerics::Tolerances& tol = {});

struct ProfileSample {
  double v = 0.0;
  double a_model = 0.0;
  double a_hyperbolic = 0.0;
  double gap = 0.0;
  /// (gap + 2V) v^{1/2}.
  double scaled_gap = 0.0;
};

inline constexpr double kDefaultRenormRho = 20.0;

std::vector<ProfileSample> gap_table(const RadialMetric& metric, std::span<const double> v_grid,
                                     double renormalized_volume_value,
                                     const numerics::Tolerances& tol = {});
/// Computes V with renormalized_volume(metric, renorm_rho) first.
std::vector<ProfileSample> gap_table(const RadialMetric& metric, std::span<const double> v_grid,
                                     const numerics::Tolerances& tol = {},
                                     double renorm_rho = kDefaultRenormRho);

/// True when the centred-sphere profile is nondecreasing along the grid.
bool profile_monotone_check(const RadialMetric& metric, std::span<const double> v_grid,
                            const numerics::Tolerances& tol = {});

}  // namespace ahlab
