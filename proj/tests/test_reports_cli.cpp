#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "ahlab/cli.hpp"
#include "ahlab/errors.hpp"
#include "ahlab/reports.hpp"

namespace fs = std::filesystem;
using namespace ahlab;

namespace {

const std::string kModels = AHLAB_MODELS_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(AHLAB_SCRATCH_DIR) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string body(const std::string& csv) { return csv.substr(csv.find('\n') + 1); }

// Every run emit_summary needs, written for one model.
void full_suite(const std::string& model, const fs::path& dir) {
  const std::string m = kModels + "/" + model;
  auto go = [&](std::vector<std::string> args) {
    const auto r = invoke(std::move(args));
    INFO(r.err);
    REQUIRE(r.code == cli::kOk);
  };
  go({"--model", m, "--out", (dir / "validate.json").string(), "validate"});
  go({"--model", m, "--out", (dir / "spheres.csv").string(), "spheres"});
  go({"--model", m, "--out", (dir / "stability.csv").string(), "stability"});
  go({"--model", m, "--out", (dir / "imcf.csv").string(), "imcf", "--t-max", "10", "--dt", "1e-3"});
  go({"--model", m, "--out", (dir / "compare-ode.csv").string(), "compare-ode", "--v0", "1", "--v-end", "1e4"});
  go({"--model", m, "--out", (dir / "profile.csv").string(), "profile"});
  go({"--model", m, "--out", (dir / "renorm-vol.json").string(), "renorm-vol"});
}

bool criterion_passes(const nlohmann::json& verdict, const std::string& name) {
  for (const auto& c : verdict.at("criteria")) {
    if (c.at("name") == name) return c.at("pass").get<bool>();
  }
  FAIL("criterion " << name << " missing");
  return false;
}

}  // namespace

TEST_CASE("sha256") {
  CHECK(reports::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(reports::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("manifest round trip") {
  reports::RunManifest m{"profile", "sha256:00", {{"n", 60}, {"grid", "log"}}, "2024-01-01T00:00:00Z"};
  const auto back = reports::RunManifest::from_json(m.to_json());
  CHECK(back.subcommand == "profile");
  CHECK(back.model_digest == "sha256:00");
  CHECK(back.parameters == m.parameters);
  CHECK(back.timestamp == m.timestamp);
  CHECK(back.tool_version == reports::kToolVersion);
  CHECK_THROWS(reports::RunManifest::from_json(nlohmann::json::array()));

  ::setenv("SOURCE_DATE_EPOCH", "86400", 1);
  CHECK(reports::make_manifest("x", "", {}).timestamp == "1970-01-02T00:00:00Z");
  ::unsetenv("SOURCE_DATE_EPOCH");
  CHECK(reports::make_manifest("x", "", {}).timestamp.size() == 20);
}

TEST_CASE("csv round trip is bit exact") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const reports::Table table{{"a", "b", "c"},
                             {{0.1, -1e-300, 6.02214076e23},
                              {std::nextafter(1.0, 2.0), 0.0, -0.0},
                              {nan, std::numeric_limits<double>::infinity(), 1.0 / 3.0}}};
  const auto manifest = reports::make_manifest("test", "", {{"k", 1}});
  std::stringstream text;
  reports::write_csv(text, manifest, table);
  CHECK(text.str().rfind("# {", 0) == 0);

  const auto data = reports::read_csv(text);
  CHECK(data.manifest.at("subcommand") == "test");
  REQUIRE(data.columns == table.columns);
  REQUIRE(data.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double x = table.rows[i][j], y = data.rows[i][j];
      CHECK(((std::isnan(x) && std::isnan(y)) || (x == y && std::signbit(x) == std::signbit(y))));
    }
  }
  CHECK(data.column("b")[1] == 0.0);
  CHECK_THROWS_AS((void)data.column("missing"), DomainError);

  std::stringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS_AS(reports::read_csv(ragged), DomainError);
  std::stringstream garbage("a\nnot-a-number\n");
  CHECK_THROWS_AS(reports::read_csv(garbage), DomainError);
}

TEST_CASE("cli examples") {
  const auto dir = scratch("examples");

  const auto v = invoke({"--model", kModels + "/hyperbolic.json", "--out", (dir / "v.json").string(), "validate"});
  CHECK(v.code == cli::kOk);
  CHECK(reports::read_json(dir / "v.json").at("is_ah") == true);

  const auto p = invoke({"--model", kModels + "/ads_m1.json", "--out", (dir / "p.csv").string(), "profile",
                        "--v-min", "1", "--v-max", "1e6", "--n", "60", "--log-grid"});
  REQUIRE(p.code == cli::kOk);
  const auto profile = reports::read_csv(dir / "p.csv");
  CHECK(profile.columns == std::vector<std::string>{"v", "A_g", "A_H", "gap", "scaled_gap"});
  REQUIRE(profile.rows.size() == 60);
  for (double gap : profile.column("gap")) CHECK(gap <= 0.0);
  CHECK(profile.manifest.at("parameters").at("n") == 60);
  CHECK(profile.manifest.at("model_digest").get<std::string>().rfind("sha256:", 0) == 0);

  const auto e = invoke({"--model", kModels + "/ads_m1.json", "--out", (dir / "e.csv").string(), "expansion",
                        "--v-max", "1e6"});
  REQUIRE(e.code == cli::kOk);
  const auto expansion = reports::read_csv(dir / "e.csv");
  const auto v_col = expansion.column("v");
  const auto inc = expansion.column("scaled_gap_increment");
  CHECK(v_col.back() == 1e6);
  for (std::size_t i = 1; i < v_col.size(); ++i) CHECK(v_col[i] == doctest::Approx(4 * v_col[i - 1]));
  CHECK(std::isnan(inc.front()));
  // the scaled gap at 1e6 agrees with the profile run's last row
  CHECK(expansion.column("scaled_gap").back() == doctest::Approx(profile.column("scaled_gap").back()).epsilon(1e-9));

  // stdout when --out is omitted
  const auto r = invoke({"--model", kModels + "/hyperbolic.json", "renorm-vol"});
  CHECK(r.code == cli::kOk);
  CHECK(nlohmann::json::parse(r.out).at("value") == 0.0);
}

TEST_CASE("cli exit codes") {
  const std::string m1 = kModels + "/ads_m1.json";
  CHECK(invoke({"--model", m1, "profile", "--bogus"}).code == cli::kInvalid);
  CHECK(invoke({"--model", m1}).code == cli::kInvalid);
  CHECK(invoke({"--model", kModels + "/nope.json", "spheres"}).code == cli::kInvalid);
  CHECK(invoke({"--model", m1, "profile", "--n", "0"}).code == cli::kInvalid);
  CHECK(invoke({"--model", m1, "imcf", "--dt", "-1"}).code == cli::kInvalid);
  CHECK(invoke({"--model", m1, "imcf", "--s0", "0.5"}).code == cli::kOk);  // filled interior
  CHECK(invoke({"--model", kModels + "/ads_m1_horizon.json", "imcf", "--s0", "0.5"}).code == cli::kInvalid);
  CHECK(invoke({"--help"}).code == cli::kOk);

  // a perturbation that violates R >= -6 fails validation
  const auto dir = scratch("exit_codes");
  std::ofstream(dir / "dip.json") << R"({"type": "perturbed", "mass": 1, "coeffs": [-0.5]})";
  const auto dip = invoke({"--model", (dir / "dip.json").string(), "validate"});
  CHECK(dip.code == cli::kInvalid);
  CHECK(nlohmann::json::parse(dip.out).at("is_ah") == false);

  // negative radicand in the comparison ODE is a numerical failure
  const auto ode = invoke({"compare-ode", "--v0", "1", "--mass-floor", "1"});
  CHECK(ode.code == cli::kNumeric);
  CHECK(ode.err.find("radicand") != std::string::npos);
}

TEST_CASE("identical runs give identical bytes") {
  const auto dir = scratch("determinism");
  const std::string m = kModels + "/perturbed_m1.json";
  for (const char* name : {"a.csv", "b.csv"}) {
    REQUIRE(invoke({"--model", m, "--out", (dir / name).string(), "profile", "--n", "20"}).code == cli::kOk);
  }
  const std::string a = slurp(dir / "a.csv"), b = slurp(dir / "b.csv");
  CHECK(body(a) == body(b));
  CHECK(reports::read_csv(dir / "a.csv").manifest.at("parameters") ==
        reports::read_csv(dir / "b.csv").manifest.at("parameters"));

  ::setenv("SOURCE_DATE_EPOCH", "0", 1);
  REQUIRE(invoke({"--model", m, "--out", (dir / "c.csv").string(), "spheres"}).code == cli::kOk);
  REQUIRE(invoke({"--model", m, "--out", (dir / "d.csv").string(), "spheres"}).code == cli::kOk);
  ::unsetenv("SOURCE_DATE_EPOCH");
  CHECK(slurp(dir / "c.csv") == slurp(dir / "d.csv"));
}

TEST_CASE("summary") {
  const auto hyp = scratch("summary_hyperbolic");
  full_suite("hyperbolic.json", hyp);
  const auto out_h = invoke({"--out", (hyp / "summary.json").string(), "summary", "--dir", hyp.string()});
  CHECK(out_h.code == cli::kOk);
  const auto verdict_h = reports::read_json(hyp / "summary.json");
  CHECK(verdict_h.at("all_pass") == true);
  for (const auto& c : verdict_h.at("criteria")) {
    if (c.at("name") == "profile_comparison" || c.at("name") == "renormalized_volume_sign") {
      CHECK(std::abs(c.at("measured").get<double>()) <= 1e-9);
    }
  }

  const auto ads = scratch("summary_ads_m1");
  full_suite("ads_m1.json", ads);
  const auto verdict = reports::emit_summary(ads);
  CHECK(verdict.at("all_pass") == true);
  CHECK(criterion_passes(verdict, "hawking_identity"));
  CHECK(criterion_passes(verdict, "geroch_monotonicity"));

  const auto empty = scratch("summary_empty");
  try {
    reports::emit_summary(empty);
    FAIL("expected missing runs");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("missing runs") != std::string::npos);
    CHECK(std::string(e.what()).find("profile.csv") != std::string::npos);
  }
  CHECK(invoke({"summary", "--dir", empty.string()}).code == cli::kInvalid);
}
