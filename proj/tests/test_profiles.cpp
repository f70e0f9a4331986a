#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <doctest.h>

#include "ahlab/errors.hpp"
#include "ahlab/profiles.hpp"
#include "ahlab/sphere_geometry.hpp"
#include "oracles.hpp"

using namespace ahlab;

namespace {

constexpr double kPi = std::numbers::pi;

RadialMetric filled_ads(double m) { return with_filled_interior(make_ads_schwarzschild(m)); }

oracle::Model filled_oracle(double m) {
  return {m, {}, oracle::ads_horizon(m) + 0.1};
}

}  // namespace

TEST_CASE("hyperbolic ball volume") {
  for (double rho : {0.0, 1e-4, 0.1, 0.49, 0.5, 0.51, 1.0, 5.0, 20.0}) {
    CHECK(hyperbolic_volume(rho) ==
          doctest::Approx(4 * kPi * oracle::sinh2_antiderivative(rho)).epsilon(1e-12));
  }
  // the series branch, where the closed form cancels
  for (double rho : {1e-6, 1e-3, 0.05}) {
    CHECK(hyperbolic_volume(rho) == doctest::Approx(static_cast<double>(oracle::hyperbolic_ball(rho))).epsilon(1e-14));
  }
  const double small = 1e-3;
  CHECK(hyperbolic_volume(small) / (4 * kPi / 3 * small * small * small) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(hyperbolic_volume(1.0) == doctest::Approx(4 * kPi * 0.406715).epsilon(1e-6));
  CHECK_THROWS_AS(hyperbolic_volume(-0.1), DomainError);
  for (double s : {0.01, 0.3, 0.5, 2.0, 1e5}) {
    CHECK(hyperbolic_volume_of_area_radius(s) == doctest::Approx(hyperbolic_volume(std::asinh(s))).epsilon(1e-13));
  }
}

TEST_CASE("hyperbolic profile") {
  for (double v : numerics::logspace(1e-8, 1e14, 45)) {
    CHECK(hyperbolic_profile(v) == doctest::Approx(oracle::hyperbolic_area(v)).epsilon(1e-12));
  }
  const double tiny = 1e-9;
  CHECK(hyperbolic_profile(tiny) / (std::cbrt(36 * kPi) * std::pow(tiny, 2.0 / 3)) ==
        doctest::Approx(1.0).epsilon(1e-5));
  // dA_H/dv = 2 coth rho_v
  for (double v : {0.5, 10.0, 1e4}) {
    const double h = 1e-5 * v;
    const double slope = (hyperbolic_profile(v + h) - hyperbolic_profile(v - h)) / (2 * h);
    CHECK(slope == doctest::Approx(2 / std::tanh(hyperbolic_radius_for_volume(v))).epsilon(1e-7));
  }
  CHECK_THROWS_AS(hyperbolic_profile(0.0), DomainError);
  CHECK_THROWS_AS(hyperbolic_profile(-1.0), DomainError);
}

TEST_CASE("model volume") {
  const auto hyp = make_hyperbolic();
  for (double s : {0.1, 1.0, 40.0}) CHECK(model_volume(hyp, s) == hyperbolic_volume_of_area_radius(s));

  // Horizon convention: s^3 + s - 2m = (s - r)(s^2 + rs + r^2 + 1), so with
  // s = r + w^2 the volume integrand 4π s^2 f^{-1/2} ds is smooth in w.
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double m : {0.5, 2.0}) {
    const auto metric = make_ads_schwarzschild(m);
    const double r = oracle::ads_horizon(m);
    auto smooth = [r](double w) {
      const double s = r + w * w;
      return 8 * kPi * s * s * std::sqrt(s / (s * s + r * s + r * r + 1));
    };
    for (double s : {r + 0.01, r + 1.0, 25.0}) {
      CHECK(model_volume(metric, s) == doctest::Approx(ts.integrate(smooth, 0.0, std::sqrt(s - r))).epsilon(1e-11));
    }
    CHECK(model_volume(metric, metric.core_radius()) == 0.0);
    CHECK_THROWS_AS(model_volume(metric, 0.5 * metric.core_radius()), DomainError);
  }

  // filled interior, split at the fill radius where f' jumps
  const auto filled = filled_ads(1.0);
  const auto o = filled_oracle(1.0);
  auto plain = [&](double u) { return 4 * kPi * u * u / std::sqrt(o.f(u)); };
  for (double s : {0.5, 1.1, 3.0}) {
    double direct = ts.integrate(plain, 0.0, std::min(s, o.fill));
    if (s > o.fill) direct += ts.integrate(plain, o.fill, s);
    CHECK(model_volume(filled, s) == doctest::Approx(direct).epsilon(1e-11));
  }
  CHECK(model_volume(filled, 3.0) == doctest::Approx(57.637841298).epsilon(1e-10));  // scipy
}

TEST_CASE("sphere radius for volume inverts model volume") {
  for (const auto& metric : {make_hyperbolic(), filled_ads(1.0), make_ads_schwarzschild(2.0)}) {
    for (double v : {1e-3, 1.0, 1e3, 1e6}) {
      const double s = sphere_radius_for_volume(metric, v);
      CHECK(model_volume(metric, s) == doctest::Approx(v).epsilon(1e-11));
    }
  }
  CHECK_THROWS_AS(sphere_radius_for_volume(make_hyperbolic(), 0.0), DomainError);
}

TEST_CASE("first variation: dA/dv equals H") {
  const auto metric = filled_ads(1.0);
  for (double v : {2.0, 50.0, 1e4}) {
    const double h = 1e-4 * v;
    const double slope = (model_profile(metric, v + h) - model_profile(metric, v - h)) / (2 * h);
    const double s = sphere_radius_for_volume(metric, v);
    CHECK(slope == doctest::Approx(sphere_data(metric, s).mean_curvature).epsilon(1e-6));
  }
}

TEST_CASE("renormalised volume against the independent oracle") {
  const auto hyp = renormalized_volume(make_hyperbolic(), 20.0);
  CHECK(std::abs(hyp.value) <= 1e-9);

  for (double m : {0.5, 1.0, 2.0}) {
    const double exact = oracle::renormalized_volume(filled_oracle(m));
    const auto r = renormalized_volume(filled_ads(m), 20.0);
    CAPTURE(m);
    CHECK(r.truncation_rho == 20.0);
    CHECK(r.quad_error < 1e-9);
    CHECK(std::abs(r.value - exact) <= r.tail_estimate + r.quad_error);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-8));
  }
  // scipy cross-check of the same filled models
  CHECK(oracle::renormalized_volume(filled_oracle(0.5)) == doctest::Approx(6.9545).epsilon(1e-4));
  CHECK(oracle::renormalized_volume(filled_oracle(1.0)) == doctest::Approx(13.480).epsilon(1e-4));
  CHECK(oracle::renormalized_volume(filled_oracle(2.0)) == doctest::Approx(25.594).epsilon(1e-4));

  CHECK_THROWS_AS(renormalized_volume(filled_ads(1.0), 1.0), DomainError);  // tail too large
  CHECK_THROWS_AS(renormalized_volume(filled_ads(1.0), -2.0), DomainError);
}

// Truncating at rho loses -8πm/(3 sinh rho) + O(e^{-3rho}), i.e.
// -(1/(3 sinh rho)) ∫ tr h with ∫ tr(mσ) = 8πm. A remainder quoted with an
// extra factor 2π misses by about 5.4e-4 at rho = 12.
TEST_CASE("volume expansion remainder") {
  const double m = 1.0;
  const double exact = oracle::renormalized_volume(filled_oracle(m));
  for (double rho : {10.0, 12.0, 14.0}) {
    const double truncated = renormalized_volume(filled_ads(m), rho).value;
    const double sh = std::sinh(rho);
    CAPTURE(rho);
    CHECK(std::abs(truncated - exact + 8 * kPi * m / (3 * sh)) <= 1e-4 * std::exp(-(rho - 12)));
    const double quoted = std::abs(truncated - exact + 2 * kPi / (3 * sh) * 8 * kPi * m);
    CHECK(quoted == doctest::Approx((2 * kPi - 1) * 8 * kPi * m / (3 * sh)).epsilon(1e-3));
  }
}

TEST_CASE("profile gap") {
  const auto grid = numerics::logspace(1.0, 1e6, 60);
  for (double m : {0.5, 1.0, 2.0}) {
    const auto rows = gap_table(filled_ads(m), grid);
    REQUIRE(rows.size() == 60);
    for (const auto& r : rows) {
      CHECK(r.gap < 0.0);
      CHECK(r.a_model < r.a_hyperbolic);
      CHECK(r.a_hyperbolic == doctest::Approx(oracle::hyperbolic_area(r.v)).epsilon(1e-12));
    }
  }
  const auto hyp = gap_table(make_hyperbolic(), grid);
  for (const auto& r : hyp) CHECK(std::abs(r.gap) <= 1e-9 * r.a_hyperbolic);

  // gap(10^6) for m = 1: scipy cross-check and the -2V limit
  const double V = oracle::renormalized_volume(filled_oracle(1.0));
  const double far[] = {1e6};
  const auto last = gap_table(filled_ads(1.0), far, V).front();
  CHECK(last.gap == doctest::Approx(-26.897).epsilon(1e-4));
  CHECK(std::abs(last.gap + 2 * V) <= 0.02 * 2 * V);
  // gap + 2V ~ 8πm/s_v, so the scaled gap tends to 8 sqrt(2) π^{3/2} m
  CHECK(last.scaled_gap == doctest::Approx(8 * std::sqrt(2.0) * std::pow(kPi, 1.5)).epsilon(2e-3));

  CHECK_THROWS_AS(gap_table(make_hyperbolic(), std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(gap_table(make_hyperbolic(), std::vector<double>{2.0, 1.0}), DomainError);
}

// Past the core the scaled gap behaves like C + D v^{-1/2}, so each x4 step
// roughly halves the increment.
TEST_CASE("scaled gap increments shrink on a dyadic grid") {
  std::vector<double> grid;
  for (double v = 256.0; v <= 1.1e6; v *= 4) grid.push_back(v);
  const auto rows = gap_table(filled_ads(1.0), grid);
  double previous = INFINITY;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double step = std::abs(rows[i].scaled_gap - rows[i - 1].scaled_gap);
    CAPTURE(rows[i].v);
    CHECK(step < 0.6 * previous);
    previous = step;
  }
  CHECK(previous < 0.1);
}

TEST_CASE("centred-sphere profile is nondecreasing") {
  const auto grid = numerics::logspace(1e-2, 1e5, 40);
  CHECK(profile_monotone_check(make_hyperbolic(), grid));
  CHECK(profile_monotone_check(make_ads_schwarzschild(1.0), grid));
  CHECK(profile_monotone_check(filled_ads(1.0), grid));
  CHECK(profile_monotone_check(with_filled_interior(make_perturbed(1.0, std::vector<double>{0.5, 0.2})), grid));
}
