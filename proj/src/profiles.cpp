#include "ahlab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "ahlab/errors.hpp"

namespace ahlab {

namespace {

constexpr double kPi = std::numbers::pi;

// π Σ_{k>=1} (2ρ)^{2k+1} / (2k+1)!  =  π (sinh 2ρ - 2ρ), summed directly to
// avoid the cancellation for small ρ.
double hyperbolic_volume_series(double rho) {
  const double x = 2.0 * rho;
  const double x2 = x * x;
  double term = x * x2 / 6.0;
  double sum = 0.0;
  for (int k = 1; k < 40; ++k) {
    sum += term;
    if (term < sum * 1e-17) break;
    term *= x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
  }
  return kPi * sum;
}

numerics::QuadResult& accumulate(numerics::QuadResult& total, const numerics::QuadResult& part) {
  total.value += part.value;
  total.error_bound += part.error_bound;
  total.evaluations += part.evaluations;
  return total;
}

void require_positive_volume(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DomainError(fmt::format("{}: volume must be positive and finite, got {:.17g}", what, v));
  }
}

void require_grid(std::span<const double> grid) {
  if (grid.empty()) throw DomainError("volume grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_positive_volume(grid[i], "volume grid");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("volume grid must be strictly increasing");
    }
  }
}

}  // namespace

double hyperbolic_volume(double rho) {
  if (!std::isfinite(rho) || rho < 0.0) {
    throw DomainError(fmt::format("hyperbolic_volume: rho must be >= 0, got {:.17g}", rho));
  }
  if (rho < 0.5) return hyperbolic_volume_series(rho);
  const double sh = std::sinh(rho);
  return 4.0 * kPi * (0.5 * sh * sh + 0.25 - 0.5 * rho - 0.25 * std::exp(-2.0 * rho));
}

double hyperbolic_volume_of_area_radius(double s) {
  if (!std::isfinite(s) || s < 0.0) {
    throw DomainError(fmt::format("area radius must be >= 0, got {:.17g}", s));
  }
  if (s < 0.5) return hyperbolic_volume(std::asinh(s));
  return 2.0 * kPi * (s * std::sqrt(1.0 + s * s) - std::asinh(s));
}

double hyperbolic_radius_for_volume(double v, double tol) {
  require_positive_volume(v, "hyperbolic_radius_for_volume");
  // Small balls are Euclidean, large ones grow like (π/2) e^{2ρ}.
  const double small = std::cbrt(3.0 * v / (4.0 * kPi));
  const double hi = std::max({1.0, small + 1.0, 0.5 * std::log(2.0 * v / kPi) + 2.0});
  const double root_tol = tol * std::min(1.0, small);
  return numerics::find_root([v](double rho) { return hyperbolic_volume(rho) - v; }, 0.0, hi,
                             root_tol);
}

double hyperbolic_profile(double v, double tol) {
  const double sh = std::sinh(hyperbolic_radius_for_volume(v, tol));
  return 4.0 * kPi * sh * sh;
}

numerics::QuadResult volume_excess(const RadialMetric& metric, double s, double abs_tol) {
  const double origin = metric.volume_origin();
  if (!std::isfinite(s) || s < origin) {
    throw DomainError(fmt::format("area radius {:.17g} is below the volume origin {:.17g}", s, origin));
  }
  numerics::QuadResult total{-hyperbolic_volume_of_area_radius(origin), 0.0, 0};
  if (s == origin || metric.is_exactly_hyperbolic()) {
    if (metric.is_exactly_hyperbolic()) total.value = 0.0;
    return total;
  }

  auto integrand = [&](double u) { return 4.0 * kPi * u * u * metric.inverse_sqrt_excess(u); };
  const int pieces = 3;
  const double tol = abs_tol / pieces;
  double start = origin;

  if (metric.interior() == Interior::filled) {
    const double fill = metric.fill_radius();
    accumulate(total, numerics::integrate(integrand, 0.0, std::min(s, fill), tol));
    start = fill;
  } else if (metric.core_radius() > 0.0) {
    // u = core + w^2 regularises the f^{-1/2} singularity at the horizon.
    const double core = metric.core_radius();
    const double top = std::min(s, core + 1.0);
    auto mapped = [&](double w) {
      const double u = core + w * w;
      return 4.0 * kPi * u * u * metric.horizon_mapped_excess(w);
    };
    accumulate(total, numerics::integrate(mapped, 0.0, std::sqrt(top - core), tol));
    start = core + 1.0;
  } else {
    const double top = std::min(s, 1.0);
    accumulate(total, numerics::integrate(integrand, 0.0, top, tol));
    start = 1.0;
  }

  if (s > start) {
    // The excess decays like 1/u^2 over many decades; integrate in log u.
    auto logged = [&](double x) {
      const double u = std::exp(x);
      return integrand(u) * u;
    };
    accumulate(total, numerics::integrate(logged, std::log(start), std::log(s), tol));
  }
  return total;
}

numerics::QuadResult model_volume_detailed(const RadialMetric& metric, double s, double abs_tol) {
  if (metric.background() != Background::hyperbolic) {
    // Only used for the flat test profile, where the excess form is meaningless.
    const double origin = metric.volume_origin();
    if (!std::isfinite(s) || s < origin) throw DomainError("area radius below the volume origin");
    auto integrand = [&](double u) { return 4.0 * kPi * u * u / std::sqrt(metric.f(u)); };
    return numerics::integrate(integrand, origin, s, abs_tol);
  }
  numerics::QuadResult result = volume_excess(metric, s, abs_tol);
  result.value += hyperbolic_volume_of_area_radius(s);
  if (s == metric.volume_origin()) result.value = 0.0;
  return result;
}

double model_volume(const RadialMetric& metric, double s, double abs_tol) {
  return model_volume_detailed(metric, s, abs_tol).value;
}

double sphere_radius_for_volume(const RadialMetric& metric, double v, const numerics::Tolerances& tol) {
  require_positive_volume(v, "sphere_radius_for_volume");
  const double lo = metric.volume_origin();
  auto residual = [&](double s) { return model_volume(metric, s, tol.quad_abs) - v; };

  double hi = std::max(2.0 * lo, std::sinh(hyperbolic_radius_for_volume(v)) + 1.0);
  for (int i = 0; residual(hi) <= 0.0; ++i) {
    if (i > 200) throw NumericError(fmt::format("cannot bracket the sphere of volume {:.17g}", v));
    hi *= 2.0;
  }
  return numerics::find_root(residual, lo, hi, tol.root * std::max(1.0, lo));
}

double model_profile(const RadialMetric& metric, double v, const numerics::Tolerances& tol) {
  const double s = sphere_radius_for_volume(metric, v, tol);
  return 4.0 * kPi * s * s;
}

RenormVolumeResult renormalized_volume(const RadialMetric& metric, double truncation_rho,
                                       const numerics::Tolerances& tol) {
  if (metric.background() != Background::hyperbolic) {
    throw DomainError("renormalised volume needs a hyperbolic background");
  }
  if (!std::isfinite(truncation_rho) || !(truncation_rho > 0.0)) {
    throw DomainError(fmt::format("truncation rho must be positive, got {:.17g}", truncation_rho));
  }
  RenormVolumeResult out;
  out.truncation_rho = truncation_rho;
  if (metric.is_exactly_hyperbolic()) return out;

  const double s = s_from_rho(metric, truncation_rho);
  const numerics::QuadResult offset = rho_offset_detailed(metric, s);
  const numerics::QuadResult excess = volume_excess(metric, s, tol.quad_abs);

  // vol_g(s) - vol_H(rho) = excess(s) + [vol_H(rho + d) - vol_H(rho)],
  // d = arcsinh(s) - rho; the bracket is 2π cosh(2ρ + d) sinh d - 2π d.
  const double d = offset.value;
  const double shift = 2.0 * kPi * (std::cosh(2.0 * truncation_rho + d) * std::sinh(d) - d);
  out.value = excess.value + shift;

  const double dshift = 2.0 * kPi * (std::cosh(2.0 * truncation_rho + 2.0 * d) - 1.0);
  out.quad_error = excess.error_bound + std::abs(dshift) * offset.error_bound;

  double tail = 2.0 * kPi / (3.0 * std::sinh(truncation_rho)) * 8.0 * kPi * std::abs(metric.mass());
  const auto coeffs = metric.perturbation_coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    tail += 4.0 * kPi * std::abs(coeffs[i]) / std::pow(s, static_cast<double>(i + 2));
  }
  out.tail_estimate = tail;
  if (tail > 0.1 * std::abs(out.value)) {
    throw DomainError(fmt::format(
        "truncation rho = {:.6g} is too small: tail estimate {:.3e} exceeds 10% of |V| = {:.3e}",
        truncation_rho, tail, std::abs(out.value)));
  }
  return out;
}

std::vector<ProfileSample> gap_table(const RadialMetric& metric, std::span<const double> v_grid,
                                     double renormalized_volume_value,
                                     const numerics::Tolerances& tol) {
  require_grid(v_grid);
  std::vector<ProfileSample> rows;
  rows.reserve(v_grid.size());
  for (const double v : v_grid) {
    const double s = sphere_radius_for_volume(metric, v, tol);
    const double sh = std::sinh(hyperbolic_radius_for_volume(v, tol.root));
    ProfileSample row;
    row.v = v;
    row.a_model = 4.0 * kPi * s * s;
    row.a_hyperbolic = 4.0 * kPi * sh * sh;
    row.gap = 4.0 * kPi * (s - sh) * (s + sh);
    row.scaled_gap = (row.gap + 2.0 * renormalized_volume_value) * std::sqrt(v);
    rows.push_back(row);
  }
  return rows;
}

std::vector<ProfileSample> gap_table(const RadialMetric& metric, std::span<const double> v_grid,
                                     const numerics::Tolerances& tol, double renorm_rho) {
  require_grid(v_grid);
  const double V = renormalized_volume(metric, renorm_rho, tol).value;
  return gap_table(metric, v_grid, V, tol);
}

bool profile_monotone_check(const RadialMetric& metric, std::span<const double> v_grid,
                            const numerics::Tolerances& tol) {
  require_grid(v_grid);
  double previous = -std::numeric_limits<double>::infinity();
  for (const double v : v_grid) {
    const double a = model_profile(metric, v, tol);
    if (a < previous) return false;
    previous = a;
  }
  return true;
}

}  // namespace ahlab
