#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ahlab::reports {

inline constexpr std::string_view kToolVersion = "ahlab 0.3.0";

/// Provenance of one CLI run. Identical manifests imply identical numbers;
/// only the timestamp differs between repeated runs.
struct RunManifest {
  std::string subcommand;
  std::string model_digest;  // "sha256:<hex>" of the model file, empty if none
  nlohmann::json parameters = nlohmann::json::object();
  std::string timestamp;
  std::string tool_version{kToolVersion};

  [[nodiscard]] nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& doc);
};

/// Manifest stamped with the current UTC time (or SOURCE_DATE_EPOCH when set).
RunManifest make_manifest(std::string subcommand, std::string model_digest,
                          nlohmann::json parameters);

std::string sha256_hex(std::string_view bytes);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// "# <manifest json>" line, header line, then one row per line with every
/// value printed as %.17g so that the text round-trips bit for bit.
void write_csv(std::ostream& out, const RunManifest& manifest, const Table& table);
void write_csv(const std::filesystem::path& path, const RunManifest& manifest, const Table& table);

struct CsvData {
  nlohmann::json manifest;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Column by header name; throws DomainError when absent.
  [[nodiscard]] std::vector<double> column(std::string_view name) const;
};

CsvData read_csv(std::istream& in);
CsvData read_csv(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);
nlohmann::json read_json(const std::filesystem::path& path);

/// Run files emit_summary expects in its directory.
const std::vector<std::string>& required_runs();

/// Aggregates a directory of run outputs into one verdict:
///   {"criteria": [{"name", "measured", "tolerance", "pass"}...], "all_pass"}.
/// Throws DomainError listing the missing files when a run is absent.
nlohmann::json emit_summary(const std::filesystem::path& results_dir);

}  // namespace ahlab::reports
