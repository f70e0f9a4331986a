#pragma once

// Reference values computed independently of the library: closed forms,
// long-double Newton inversions, and Boost's tanh-sinh / exp-sinh quadrature
// (a different rule from the Gauss-Kronrod path used by the library).

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// AdS-Schwarzschild data written out from the defining formula
/// f = 1 + s^2 - 2m/s + sum c_k s^{-k}, optionally filled with the
/// constant-density interior mu(S)(s/S)^3 below S (S = 0: no filling).
struct Model {
  double m = 0.0;
  std::vector<double> c;  // c_2, c_3, ...
  double fill = 0.0;

  [[nodiscard]] double mu(double s) const {
    if (fill > 0.0 && s < fill) {
      const double r = s / fill;
      return exterior_mu(fill) * r * r * r;
    }
    return exterior_mu(s);
  }
  [[nodiscard]] double exterior_mu(double s) const {
    double mu = m;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double k = static_cast<double>(i + 2);
      mu -= 0.5 * c[i] * std::pow(s, 1.0 - k);
    }
    return mu;
  }
  [[nodiscard]] double f(double s) const { return 1.0 + s * s - 2.0 * mu(s) / s; }
  /// f^{-1/2} - (1+s^2)^{-1/2} rationalised: (b - f) / (sqrt(f b) (sqrt f + sqrt b)).
  [[nodiscard]] double excess(double s) const {
    const double f_ = f(s);
    const double b = 1.0 + s * s;
    return (2.0 * mu(s) / s) / (std::sqrt(f_ * b) * (std::sqrt(f_) + std::sqrt(b)));
  }
};

/// Euclidean-volume-normalised hyperbolic ball volume π(sinh 2ρ - 2ρ).
inline long double hyperbolic_ball(long double rho) {
  if (rho < 0.1L) {
    long double x = 2 * rho, term = x * x * x / 6, sum = 0;
    for (int k = 1; k < 30; ++k) {
      sum += term;
      term *= x * x / ((2 * k + 2) * (2 * k + 3));
    }
    return std::numbers::pi_v<long double> * sum;
  }
  return std::numbers::pi_v<long double> * (std::sinh(2 * rho) - 2 * rho);
}

/// Geodesic radius of the hyperbolic ball of volume v, by long-double Newton.
inline double hyperbolic_radius(double v) {
  // Both starts lie above the root, where Newton on the convex volume is monotone.
  long double rho = std::cbrt(3.0L * v / (4 * std::numbers::pi_v<long double>));
  if (v >= 1) rho = std::min(rho, 0.5L * std::log(2.0L * v / std::numbers::pi_v<long double>) + 1);
  for (int i = 0; i < 100; ++i) {
    const long double sh = std::sinh(rho);
    const long double step = (hyperbolic_ball(rho) - v) / (4 * std::numbers::pi_v<long double> * sh * sh);
    rho -= step;
    if (std::abs(step) <= 1e-19L * rho) break;
  }
  return static_cast<double>(rho);
}

inline double hyperbolic_area(double v) {
  const double sh = std::sinh(hyperbolic_radius(v));
  return 4.0 * pi * sh * sh;
}

/// Root of s^3 + s - 2m by Cardano's formula.
inline double ads_horizon(double m) {
  const double q = m;  // s^3 + p s - 2q = 0 with p = 1
  const double disc = std::sqrt(q * q + 1.0 / 27.0);
  return std::cbrt(q + disc) + std::cbrt(q - disc);
}

/// Renormalised volume V = ∫_0^∞ 4π u^2 (f^{-1/2} - (1+u^2)^{-1/2}) du for a
/// filled model, by tanh-sinh on [0, S] and exp-sinh on [S, ∞).
inline double renormalized_volume(const Model& model) {
  auto g = [&](double u) { return 4.0 * pi * u * u * model.excess(u); };
  boost::math::quadrature::tanh_sinh<double> inner;
  boost::math::quadrature::exp_sinh<double> outer;
  const double a = inner.integrate(g, 0.0, model.fill, 1e-14);
  const double b = outer.integrate([&](double w) { return g(model.fill + w); }, 1e-14);
  return a + b;
}

/// ∫_0^ρ sinh^2 in closed form:
/// sinh^2ρ/2 + 1/4 - ρ/2 - e^{-2ρ}/4.
inline double sinh2_antiderivative(double rho) {
  const double sh = std::sinh(rho);
  return 0.5 * sh * sh + 0.25 - 0.5 * rho - 0.25 * std::exp(-2.0 * rho);
}

}  // namespace oracle
