#include "ahlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ahlab/errors.hpp"
#include "ahlab/imcf_flow.hpp"
#include "ahlab/model_io.hpp"
#include "ahlab/profiles.hpp"
#include "ahlab/reports.hpp"
#include "ahlab/sphere_geometry.hpp"

namespace ahlab::cli {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

struct Globals {
  double quad_tol = 1e-10;
  double ode_tol = 1e-9;
  std::string model;
  std::string out;

  [[nodiscard]] numerics::Tolerances tolerances() const { return {quad_tol, ode_tol, 1e-12}; }
};

struct Context {
  const Globals& globals;
  std::ostream& out;
  int exit_code = kOk;
};

struct LoadedModel {
  ModelSpec spec;
  json parameters;
};

LoadedModel load(const Globals& g) {
  if (g.model.empty()) throw DomainError("--model is required for this subcommand");
  LoadedModel m{load_model(g.model), json::object()};
  m.parameters["model"] = m.spec.source;
  m.parameters["quad_tol"] = g.quad_tol;
  m.parameters["ode_tol"] = g.ode_tol;
  return m;
}

void emit(Context& ctx, const reports::RunManifest& manifest, const reports::Table& table) {
  if (ctx.globals.out.empty()) {
    reports::write_csv(ctx.out, manifest, table);
  } else {
    reports::write_csv(ctx.globals.out, manifest, table);
  }
}

void emit(Context& ctx, const json& doc) {
  if (ctx.globals.out.empty()) {
    ctx.out << doc.dump(2) << '\n';
  } else {
    reports::write_json(ctx.globals.out, doc);
  }
}

double default_s_min(const RadialMetric& metric) { return metric.core_radius() + kDefaultFillOffset; }

std::vector<double> radius_grid(const RadialMetric& metric, std::optional<double> s_min,
                                double s_max, int n) {
  const double lo = s_min.value_or(default_s_min(metric));
  if (!(s_max > lo)) throw DomainError("--s-max must exceed --s-min");
  auto grid = numerics::logspace(lo, s_max, n);
  for (double s : grid) metric.require_domain(s, "radius grid");
  return grid;
}

// ---------------------------------------------------------------- spheres

struct SpheresArgs {
  std::optional<double> s_min;
  double s_max = 1e3;
  int n = 200;
};

void run_spheres(Context& ctx, const SpheresArgs& a) {
  const auto model = load(ctx.globals);
  const RadialMetric& metric = model.spec.metric;
  const auto grid = radius_grid(metric, a.s_min, a.s_max, a.n);

  reports::Table table{{"s", "rho", "area", "H", "Ric_nu", "K", "R", "hawking_mass", "stability_total"},
                       {}};
  for (double s : grid) {
    const SphereGeometry g = sphere_data(metric, s);
    table.rows.push_back({s, rho_from_s(metric, s), g.area, g.mean_curvature, g.ricci_normal,
                          g.gauss_curvature, g.scalar_curvature, g.hawking_mass,
                          stability_total(metric, s)});
  }
  json params = model.parameters;
  params.update({{"s_min", grid.front()}, {"s_max", a.s_max}, {"n", a.n}});
  emit(ctx, reports::make_manifest("spheres", model.spec.digest, params), table);
}

// ---------------------------------------------------------------- stability

struct StabilityArgs {
  std::optional<double> s_min;
  double s_max = 1e3;
  int n = 50;
  int l_max = 4;
};

void run_stability(Context& ctx, const StabilityArgs& a) {
  const auto model = load(ctx.globals);
  const RadialMetric& metric = model.spec.metric;
  const auto grid = radius_grid(metric, a.s_min, a.s_max, a.n);

  reports::Table table;
  table.columns = {"s", "stability_total", "genus0_bound"};
  for (int l = 0; l <= a.l_max; ++l) table.columns.push_back(fmt::format("lambda_{}", l));
  table.columns.push_back("gauss_bonnet");
  for (double s : grid) {
    std::vector<double> row = {s, stability_total(metric, s), stability_genus_bound(0)};
    for (const auto& mode : jacobi_spectrum(metric, s, a.l_max)) row.push_back(mode.eigenvalue);
    row.push_back(gauss_bonnet_total(metric, s));
    table.rows.push_back(std::move(row));
  }
  json params = model.parameters;
  params.update({{"s_min", grid.front()}, {"s_max", a.s_max}, {"n", a.n}, {"l_max", a.l_max}});
  emit(ctx, reports::make_manifest("stability", model.spec.digest, params), table);
}

// ---------------------------------------------------------------- validate

void run_validate(Context& ctx, const SpheresArgs& a) {
  const auto model = load(ctx.globals);
  const RadialMetric& metric = model.spec.metric;
  const auto grid = radius_grid(metric, a.s_min, a.s_max, a.n);
  const ValidationReport report = validate_ah(metric, grid);

  json params = model.parameters;
  params.update({{"s_min", grid.front()}, {"s_max", a.s_max}, {"n", a.n}});
  json doc = {{"is_ah", report.is_ah},
              {"min_scalar_curvature_excess", report.min_scalar_curvature_excess},
              {"decay_exponent_estimate", std::isfinite(report.decay_exponent_estimate)
                                              ? json(report.decay_exponent_estimate)
                                              : json(nullptr)},
              {"messages", report.messages},
              {"manifest", reports::make_manifest("validate", model.spec.digest, params).to_json()}};
  emit(ctx, doc);
  if (!report.is_ah) ctx.exit_code = kInvalid;
}

// ---------------------------------------------------------------- imcf

struct ImcfArgs {
  std::optional<double> s0;
  double t_max = 10.0;
  double dt = 1e-3;
};

void run_imcf(Context& ctx, const ImcfArgs& a) {
  const auto model = load(ctx.globals);
  const RadialMetric& metric = model.spec.metric;
  const double s0 = a.s0.value_or(default_s_min(metric));
  const auto flow = flow_spheres(metric, s0, a.t_max, a.dt, ctx.globals.tolerances());

  reports::Table table{{"t", "s", "area", "volume", "hawking"}, {}};
  for (const auto& p : flow) table.rows.push_back({p.t, p.s, p.area, p.enclosed_volume, p.hawking_mass});
  json params = model.parameters;
  params.update({{"s0", s0}, {"t_max", a.t_max}, {"dt", a.dt}});
  emit(ctx, reports::make_manifest("imcf", model.spec.digest, params), table);
}

// ---------------------------------------------------------------- compare-ode

struct CompareArgs {
  std::optional<double> b0;
  double v0 = 1.0;
  double v_end = 1e4;
  double mass_floor = 0.0;
  int n = 200;
};

void run_compare(Context& ctx, const CompareArgs& a) {
  double b0 = 0.0;
  if (a.b0) {
    b0 = *a.b0;
  } else if (a.v0 > 0.0) {
    b0 = hyperbolic_profile(a.v0);
  } else {
    throw DomainError("--b0 is required when --v0 is 0");
  }
  const auto curve = comparison_ode(b0, a.mass_floor, a.v0, a.v_end, a.n, ctx.globals.ode_tol);

  reports::Table table{{"v", "B", "A_H", "f", "f_H", "omega"}, {}};
  for (std::size_t i = 0; i < curve.v_grid.size(); ++i) {
    const double f = std::pow(curve.b_values[i], 1.5);
    const double f_h = std::pow(curve.hyperbolic_values[i], 1.5);
    table.rows.push_back({curve.v_grid[i], curve.b_values[i], curve.hyperbolic_values[i], f, f_h, f - f_h});
  }
  json params = {{"b0", b0}, {"v0", a.v0}, {"v_end", a.v_end}, {"mass_floor", a.mass_floor},
                 {"n", a.n}, {"ode_tol", ctx.globals.ode_tol}};
  emit(ctx, reports::make_manifest("compare-ode", "", params), table);
}

// ---------------------------------------------------------------- profile / expansion

struct ProfileArgs {
  double v_min = 1.0;
  double v_max = 1e6;
  int n = 60;
  bool log_grid = false;
  bool linear_grid = false;
  double renorm_rho = kDefaultRenormRho;
};

double model_renormalized_volume(const RadialMetric& metric, double rho,
                                 const numerics::Tolerances& tol) {
  return renormalized_volume(metric, rho, tol).value;
}

void run_profile(Context& ctx, const ProfileArgs& a) {
  const auto model = load(ctx.globals);
  const RadialMetric& metric = model.spec.metric;
  if (a.log_grid && a.linear_grid) throw DomainError("--log-grid and --linear-grid are exclusive");
  if (!(a.v_max > a.v_min)) throw DomainError("--v-max must exceed --v-min");
  const auto tol = ctx.globals.tolerances();
  const auto grid = a.linear_grid ? numerics::linspace(a.v_min, a.v_max, a.n)
                                  : numerics::logspace(a.v_min, a.v_max, a.n);
  const double V = model_renormalized_volume(metric, a.renorm_rho, tol);
  const auto rows = gap_table(metric, grid, V, tol);

  reports::Table table{{"v", "A_g", "A_H", "gap", "scaled_gap"}, {}};
  for (const auto& r : rows) table.rows.push_back({r.v, r.a_model, r.a_hyperbolic, r.gap, r.scaled_gap});
  json params = model.parameters;
  params.update({{"v_min", a.v_min}, {"v_max", a.v_max}, {"n", a.n},
                 {"grid", a.linear_grid ? "linear" : "log"}, {"renorm_rho", a.renorm_rho},
                 {"renormalized_volume", V}});
  emit(ctx, reports::make_manifest("profile", model.spec.digest, params), table);
}

void run_expansion(Context& ctx, const ProfileArgs& a) {
  const auto model = load(ctx.globals);
  const RadialMetric& metric = model.spec.metric;
  if (!(a.v_max > a.v_min) || !(a.v_min > 0.0)) throw DomainError("need 0 < --v-min < --v-max");
  const auto tol = ctx.globals.tolerances();

  // Dyadic (factor 4) grid ending exactly at v_max.
  std::vector<double> grid;
  for (double v = a.v_max; v >= a.v_min * (1.0 - 1e-12); v /= 4.0) grid.push_back(v);
  std::reverse(grid.begin(), grid.end());
  const double V = model_renormalized_volume(metric, a.renorm_rho, tol);
  const auto rows = gap_table(metric, grid, V, tol);

  reports::Table table{{"v", "A_g", "A_H", "gap", "scaled_gap", "scaled_gap_increment"}, {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double increment = i == 0 ? std::numeric_limits<double>::quiet_NaN()
                                    : r.scaled_gap - rows[i - 1].scaled_gap;
    table.rows.push_back({r.v, r.a_model, r.a_hyperbolic, r.gap, r.scaled_gap, increment});
  }
  json params = model.parameters;
  params.update({{"v_min", a.v_min}, {"v_max", a.v_max}, {"grid", "dyadic4"},
                 {"renorm_rho", a.renorm_rho}, {"renormalized_volume", V},
                 {"expected_scaled_gap_limit", 16.0 * std::sqrt(2.0) * std::pow(kPi, 2.5) * metric.mass()}});
  emit(ctx, reports::make_manifest("expansion", model.spec.digest, params), table);
}

// ---------------------------------------------------------------- renorm-vol

void run_renorm(Context& ctx, double rho) {
  const auto model = load(ctx.globals);
  const auto result = renormalized_volume(model.spec.metric, rho, ctx.globals.tolerances());
  json params = model.parameters;
  params["rho"] = rho;
  emit(ctx, json{{"value", result.value},
                 {"truncation_rho", result.truncation_rho},
                 {"tail_estimate", result.tail_estimate},
                 {"quad_error", result.quad_error},
                 {"manifest", reports::make_manifest("renorm-vol", model.spec.digest, params).to_json()}});
}

// ---------------------------------------------------------------- summary

void run_summary(Context& ctx, const std::string& dir) {
  const json verdict = reports::emit_summary(dir);
  emit(ctx, verdict);
  if (!verdict.at("all_pass").get<bool>()) ctx.exit_code = kInvalid;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical lab for rotationally symmetric asymptotically hyperbolic 3-manifolds",
               "ahlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(reports::kToolVersion));

  Globals globals;
  app.add_option("--quad-tol", globals.quad_tol, "absolute quadrature tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--ode-tol", globals.ode_tol, "relative ODE tolerance")->check(CLI::Range(1e-15, 0.1));
  app.add_option("--model", globals.model, "model JSON file");
  app.add_option("--out", globals.out, "output file (stdout when omitted)");

  std::function<void(Context&)> action;
  auto sub = [&app](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  SpheresArgs spheres;
  auto* c_spheres = sub("spheres", "invariants of centred spheres");
  c_spheres->add_option("--s-min", spheres.s_min);
  c_spheres->add_option("--s-max", spheres.s_max);
  c_spheres->add_option("--n", spheres.n)->check(CLI::Range(2, 1'000'000));
  c_spheres->callback([&] { action = [&](Context& c) { run_spheres(c, spheres); }; });

  StabilityArgs stability;
  auto* c_stability = sub("stability", "stability integrals and Jacobi spectrum");
  c_stability->add_option("--s-min", stability.s_min);
  c_stability->add_option("--s-max", stability.s_max);
  c_stability->add_option("--n", stability.n)->check(CLI::Range(2, 1'000'000));
  c_stability->add_option("--l-max", stability.l_max)->check(CLI::Range(0, 1000));
  c_stability->callback([&] { action = [&](Context& c) { run_stability(c, stability); }; });

  SpheresArgs validate{std::nullopt, 1e3, 50};
  auto* c_validate = sub("validate", "check R >= -6 and the decay of the model");
  c_validate->add_option("--s-min", validate.s_min);
  c_validate->add_option("--s-max", validate.s_max);
  c_validate->add_option("--n", validate.n)->check(CLI::Range(2, 1'000'000));
  c_validate->callback([&] { action = [&](Context& c) { run_validate(c, validate); }; });

  ImcfArgs imcf;
  auto* c_imcf = sub("imcf", "inverse mean curvature flow of a centred sphere");
  c_imcf->add_option("--s0", imcf.s0);
  c_imcf->add_option("--t-max", imcf.t_max);
  c_imcf->add_option("--dt", imcf.dt);
  c_imcf->callback([&] { action = [&](Context& c) { run_imcf(c, imcf); }; });

  CompareArgs compare;
  auto* c_compare = sub("compare-ode", "integrate the area comparison ODE");
  c_compare->add_option("--b0", compare.b0, "initial area (default A_H(v0))");
  c_compare->add_option("--v0", compare.v0);
  c_compare->add_option("--v-end", compare.v_end);
  c_compare->add_option("--mass-floor", compare.mass_floor);
  c_compare->add_option("--n", compare.n)->check(CLI::Range(2, 1'000'000));
  c_compare->callback([&] { action = [&](Context& c) { run_compare(c, compare); }; });

  ProfileArgs profile;
  auto* c_profile = sub("profile", "centred-sphere profile against the hyperbolic one");
  c_profile->add_option("--v-min", profile.v_min);
  c_profile->add_option("--v-max", profile.v_max);
  c_profile->add_option("--n", profile.n)->check(CLI::Range(2, 1'000'000));
  c_profile->add_flag("--log-grid", profile.log_grid, "log-spaced grid (default)");
  c_profile->add_flag("--linear-grid", profile.linear_grid);
  c_profile->add_option("--renorm-rho", profile.renorm_rho);
  c_profile->callback([&] { action = [&](Context& c) { run_profile(c, profile); }; });

  ProfileArgs expansion;
  auto* c_expansion = sub("expansion", "scaled profile gap on a dyadic volume grid");
  c_expansion->add_option("--v-min", expansion.v_min);
  c_expansion->add_option("--v-max", expansion.v_max);
  c_expansion->add_option("--renorm-rho", expansion.renorm_rho);
  c_expansion->callback([&] { action = [&](Context& c) { run_expansion(c, expansion); }; });

  double renorm_rho = kDefaultRenormRho;
  auto* c_renorm = sub("renorm-vol", "renormalised volume truncated at rho");
  c_renorm->add_option("--rho", renorm_rho);
  c_renorm->callback([&] { action = [&](Context& c) { run_renorm(c, renorm_rho); }; });

  std::string summary_dir;
  auto* c_summary = sub("summary", "aggregate a directory of run outputs");
  c_summary->add_option("--dir", summary_dir)->required();
  c_summary->callback([&] { action = [&](Context& c) { run_summary(c, summary_dir); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInvalid;
  }

  Context ctx{globals, out};
  try {
    action(ctx);
  } catch (const NumericError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return ctx.exit_code;
}

}  // namespace ahlab::cli
