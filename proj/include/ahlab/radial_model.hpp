#pragma once

#include <span>
#include <string>
#include <vector>

#include "ahlab/numerics.hpp"

namespace ahlab {

/// How the region inside the exterior model is treated.
///
/// `horizon`: the manifold ends at the core radius (the outermost zero of f)
/// and enclosed volumes are measured from there.
/// `filled`: for s < fill_radius the mass aspect is replaced by a
/// constant-density profile mu(S)(s/S)^3, giving a complete manifold with a
/// regular centre; volumes are measured from s = 0.
enum class Interior { horizon, filled };

/// Curvature of the background the model decays to. `flat` exists only to
/// build Euclidean test profiles; it is never asymptotically hyperbolic.
enum class Background { hyperbolic, flat };

/// Rotationally symmetric metric g = f(s)^{-1} ds^2 + s^2 sigma in area-radius
/// form, with
///
///   f(s) = 1 + kappa s^2 - 2 m / s + sum_k c_k s^{-k},   k = 2..K,
///
/// kappa = 1 for the hyperbolic background. Everything is expressed through
/// the mass aspect mu(s) = s (1 + kappa s^2 - f(s)) / 2, which equals the
/// Hawking mass of the centred sphere of area radius s and keeps the
/// curvature formulas free of cancellation at large s.
class RadialMetric {
 public:
  [[nodiscard]] double mass() const noexcept { return mass_; }
  /// c_2, c_3, ... (index 0 holds c_2).
  [[nodiscard]] std::span<const double> perturbation_coeffs() const noexcept { return coeffs_; }
  /// Outermost zero of the exterior profile, 0 when f > 0 everywhere.
  [[nodiscard]] double core_radius() const noexcept { return core_radius_; }
  [[nodiscard]] Interior interior() const noexcept { return interior_; }
  /// Radius S of the constant-density interior (0 unless interior() == filled).
  [[nodiscard]] double fill_radius() const noexcept { return fill_radius_; }
  [[nodiscard]] Background background() const noexcept { return background_; }

  /// Area radius from which enclosed volumes are measured.
  [[nodiscard]] double volume_origin() const noexcept;
  /// True when centred spheres of area radius s belong to the manifold.
  [[nodiscard]] bool in_domain(double s) const noexcept;
  /// Throws DomainError naming `what` when s is outside the manifold.
  void require_domain(double s, const char* what) const;

  [[nodiscard]] double f(double s) const;
  [[nodiscard]] double f_prime(double s) const;
  [[nodiscard]] double mass_aspect(double s) const;
  [[nodiscard]] double mass_aspect_prime(double s) const;
  /// 1 + kappa s^2 - f(s) = 2 mu(s) / s, evaluated without subtraction.
  [[nodiscard]] double f_deficit(double s) const;
  /// f(s)^{-1/2} - (1 + s^2)^{-1/2}, evaluated without subtraction.
  [[nodiscard]] double inverse_sqrt_excess(double s) const;
  /// 2w * inverse_sqrt_excess(core + w^2) for the horizon interior, finite at w = 0.
  [[nodiscard]] double horizon_mapped_excess(double w) const;

  [[nodiscard]] bool is_exactly_hyperbolic() const noexcept;
  [[nodiscard]] std::string describe() const;

 private:
  friend RadialMetric make_hyperbolic();
  friend RadialMetric make_ads_schwarzschild(double m);
  friend RadialMetric make_perturbed(double m, std::span<const double> coeffs);
  friend RadialMetric make_flat_test_profile();
  friend RadialMetric with_filled_interior(const RadialMetric& metric, double fill_radius);

  [[nodiscard]] double kappa() const noexcept { return background_ == Background::hyperbolic ? 1.0 : 0.0; }
  [[nodiscard]] double exterior_mass_aspect(double s) const;
  [[nodiscard]] double exterior_mass_aspect_prime(double s) const;
  [[nodiscard]] double exterior_f(double s) const;
  [[nodiscard]] bool inside_fill(double s) const noexcept;

  double mass_ = 0.0;
  std::vector<double> coeffs_;
  double core_radius_ = 0.0;
  Interior interior_ = Interior::horizon;
  double fill_radius_ = 0.0;
  Background background_ = Background::hyperbolic;
};

struct ValidationReport {
  /// min over the grid of R(s) + 6.
  double min_scalar_curvature_excess = 0.0;
  /// Exponent p of the fitted tail f - (1 + s^2 - 2m/s) ~ s^p; -inf for no tail.
  double decay_exponent_estimate = 0.0;
  bool is_ah = false;
  std::vector<std::string> messages;
};

/// Tolerance on R + 6 used by validate_ah.
inline constexpr double kScalarCurvatureSlack = 1e-9;

RadialMetric make_hyperbolic();
RadialMetric make_ads_schwarzschild(double m);
/// Rational-tail model. The tail may move the core outwards but not beyond
/// the reference radius 2 max(1, s_h(m)), s_h being the AdS-Schwarzschild
/// horizon of the same mass; beyond that the tail dominates the model.
RadialMetric make_perturbed(double m, std::span<const double> coeffs);
/// f == 1: Euclidean space in area-radius form, for formula checks only.
RadialMetric make_flat_test_profile();
/// Replaces the region s < fill_radius by a constant-density interior.
RadialMetric with_filled_interior(const RadialMetric& metric, double fill_radius);
/// Filled interior with the default radius core_radius + 0.1.
RadialMetric with_filled_interior(const RadialMetric& metric);

inline constexpr double kDefaultFillOffset = 0.1;

double scalar_curvature(const RadialMetric& metric, double s);

/// int_s^inf [f^{-1/2} - (1+u^2)^{-1/2}] du, so that rho(s) = arcsinh(s) - offset.
numerics::QuadResult rho_offset_detailed(const RadialMetric& metric, double s, double abs_tol = 1e-13);
double rho_offset(const RadialMetric& metric, double s, double abs_tol = 1e-13);
/// Geodesic radial coordinate normalised by rho(s) - arcsinh(s) -> 0.
double rho_from_s(const RadialMetric& metric, double s, double abs_tol = 1e-13);
double s_from_rho(const RadialMetric& metric, double rho, double abs_tol = 1e-13);
/// Smallest attainable rho (at the volume origin).
double rho_floor(const RadialMetric& metric, double abs_tol = 1e-13);

ValidationReport validate_ah(const RadialMetric& metric, std::span<const double> s_grid);

}  // namespace ahlab
