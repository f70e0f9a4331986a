#include "ahlab/reports.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <openssl/evp.h>

#include "ahlab/errors.hpp"

namespace ahlab::reports {

namespace {

constexpr double kPi = std::numbers::pi;

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& text) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw DomainError(fmt::format("CSV field '{}' is not a number", text));
  }
  return value;
}

double max_abs_deviation(const std::vector<double>& xs, double target) {
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, std::abs(x - target));
  return worst;
}

nlohmann::json criterion(const std::string& name, double measured, double tolerance, bool pass) {
  return {{"name", name}, {"measured", measured}, {"tolerance", tolerance}, {"pass", pass}};
}

double model_mass(const CsvData& data) {
  const auto& params = data.manifest.value("parameters", nlohmann::json::object());
  if (!params.contains("model")) return 0.0;
  return params.at("model").value("mass", 0.0);
}

}  // namespace

nlohmann::json RunManifest::to_json() const {
  return {{"subcommand", subcommand},
          {"model_digest", model_digest},
          {"parameters", parameters},
          {"timestamp", timestamp},
          {"tool_version", tool_version}};
}

RunManifest RunManifest::from_json(const nlohmann::json& doc) {
  RunManifest m;
  m.subcommand = doc.value("subcommand", "");
  m.model_digest = doc.value("model_digest", "");
  m.parameters = doc.value("parameters", nlohmann::json::object());
  m.timestamp = doc.value("timestamp", "");
  m.tool_version = doc.value("tool_version", "");
  return m;
}

RunManifest make_manifest(std::string subcommand, std::string model_digest,
                          nlohmann::json parameters) {
  RunManifest m;
  m.subcommand = std::move(subcommand);
  m.model_digest = std::move(model_digest);
  m.parameters = std::move(parameters);
  m.timestamp = utc_timestamp();
  return m;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw NumericError("sha256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

void write_csv(std::ostream& out, const RunManifest& manifest, const Table& table) {
  out << "# " << manifest.to_json().dump() << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw DomainError("CSV row width does not match header");
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += ',';
      line += fmt::format("{:.17g}", row[i]);
    }
    out << line << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const RunManifest& manifest, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError(fmt::format("cannot write '{}'", path.string()));
  write_csv(out, manifest, table);
}

std::vector<double> CsvData::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw DomainError(fmt::format("CSV has no column '{}'", name));
  const auto index = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[index]);
  return out;
}

CsvData read_csv(std::istream& in) {
  CsvData data;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (data.manifest.is_null()) {
        try {
          data.manifest = nlohmann::json::parse(line.substr(1));
        } catch (const nlohmann::json::parse_error&) {
          data.manifest = nlohmann::json::object();
        }
      }
      continue;
    }
    if (!have_header) {
      data.columns = split(line, ',');
      have_header = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != data.columns.size()) {
      throw DomainError(fmt::format("CSV row has {} fields, header has {}", fields.size(),
                                    data.columns.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& field : fields) row.push_back(parse_number(field));
    data.rows.push_back(std::move(row));
  }
  if (!have_header) throw DomainError("CSV has no header line");
  if (data.manifest.is_null()) data.manifest = nlohmann::json::object();
  return data;
}

CsvData read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError(fmt::format("cannot read '{}'", path.string()));
  return read_csv(in);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError(fmt::format("cannot write '{}'", path.string()));
  out << doc.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError(fmt::format("cannot read '{}'", path.string()));
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
  }
}

const std::vector<std::string>& required_runs() {
  static const std::vector<std::string> runs = {"validate.json", "spheres.csv",     "stability.csv",
                                                "imcf.csv",      "compare-ode.csv", "profile.csv",
                                                "renorm-vol.json"};
  return runs;
}

nlohmann::json emit_summary(const std::filesystem::path& results_dir) {
  std::vector<std::string> missing;
  for (const auto& name : required_runs()) {
    if (!std::filesystem::is_regular_file(results_dir / name)) missing.push_back(name);
  }
  if (!missing.empty()) {
    throw DomainError(fmt::format("missing runs in '{}': {}", results_dir.string(),
                                  fmt::join(missing, ", ")));
  }

  nlohmann::json criteria = nlohmann::json::array();

  const auto validate = read_json(results_dir / "validate.json");
  const bool is_ah = validate.value("is_ah", false);
  criteria.push_back(criterion("validate_ah", is_ah ? 1.0 : 0.0, 1.0, is_ah));

  const auto spheres = read_csv(results_dir / "spheres.csv");
  const double mass = model_mass(spheres);
  const double hawking_err = max_abs_deviation(spheres.column("hawking_mass"), mass);
  criteria.push_back(criterion("hawking_identity", hawking_err, 1e-9, hawking_err <= 1e-9));
  const double curvature_err = max_abs_deviation(spheres.column("R"), -6.0);
  criteria.push_back(criterion("scalar_curvature_floor", curvature_err, 1e-9, curvature_err <= 1e-9));

  const auto stability = read_csv(results_dir / "stability.csv");
  double worst_total = -std::numeric_limits<double>::infinity();
  for (double x : stability.column("stability_total")) worst_total = std::max(worst_total, x - 12 * kPi);
  criteria.push_back(criterion("genus0_bound", worst_total, 1e-6, worst_total <= 1e-6));
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t l = 1;; ++l) {
    const std::string name = fmt::format("lambda_{}", l);
    if (std::find(stability.columns.begin(), stability.columns.end(), name) ==
        stability.columns.end()) {
      break;
    }
    for (double x : stability.column(name)) lowest = std::min(lowest, x);
  }
  if (std::isinf(lowest)) lowest = 0.0;
  criteria.push_back(criterion("jacobi_nonnegative", lowest, -1e-10, lowest >= -1e-10));
  const double gb_err = max_abs_deviation(stability.column("gauss_bonnet"), 4 * kPi);
  criteria.push_back(criterion("gauss_bonnet", gb_err, 1e-12, gb_err <= 1e-12));

  const auto imcf = read_csv(results_dir / "imcf.csv");
  const auto t = imcf.column("t");
  const auto area = imcf.column("area");
  const auto hawking = imcf.column("hawking");
  double area_err = 0.0;
  double mass_drop = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    area_err = std::max(area_err, std::abs(area[i] * std::exp(-t[i]) / area.front() - 1.0));
    if (i > 0) mass_drop = std::max(mass_drop, hawking[i - 1] - hawking[i]);
  }
  criteria.push_back(criterion("imcf_area_law", area_err, 1e-7, area_err <= 1e-7));
  criteria.push_back(criterion("geroch_monotonicity", mass_drop, 1e-8, mass_drop <= 1e-8));

  const auto compare = read_csv(results_dir / "compare-ode.csv");
  const auto b = compare.column("B");
  const auto a_h = compare.column("A_H");
  double excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < b.size(); ++i) excess = std::max(excess, b[i] - a_h[i]);
  criteria.push_back(criterion("comparison_ode_below_hyperbolic", excess, 1e-6, excess <= 1e-6));

  const auto profile = read_csv(results_dir / "profile.csv");
  const auto gap = profile.column("gap");
  const auto profile_ah = profile.column("A_H");
  double worst_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < gap.size(); ++i) {
    worst_gap = std::max(worst_gap, gap[i] / profile_ah[i]);
  }
  criteria.push_back(criterion("profile_comparison", worst_gap, 1e-9, worst_gap <= 1e-9));

  const auto renorm = read_json(results_dir / "renorm-vol.json");
  const double volume = renorm.value("value", std::numeric_limits<double>::quiet_NaN());
  criteria.push_back(criterion("renormalized_volume_sign", volume, -1e-9, volume >= -1e-9));

  bool all_pass = true;
  for (const auto& c : criteria) all_pass = all_pass && c.at("pass").get<bool>();
  return {{"criteria", criteria}, {"all_pass", all_pass}};
}

}  // namespace ahlab::reports
