#include "ahlab/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "ahlab/errors.hpp"
#include "ahlab/reports.hpp"

namespace ahlab {

namespace {

double number_field(const nlohmann::json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (!v.is_number()) throw DomainError(fmt::format("model field '{}' must be a number", key));
  return v.get<double>();
}

}  // namespace

RadialMetric parse_model(const nlohmann::json& doc) {
  if (!doc.is_object()) throw DomainError("model file must hold a JSON object");
  static const std::vector<std::string> known = {"type", "mass", "coeffs", "interior", "fill_radius"};
  for (const auto& item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw DomainError(fmt::format("unknown model field '{}'", item.key()));
    }
  }
  if (!doc.contains("type") || !doc.at("type").is_string()) {
    throw DomainError("model field 'type' is required");
  }
  const auto type = doc.at("type").get<std::string>();
  const double mass = number_field(doc, "mass", 0.0);
  std::vector<double> coeffs;
  if (doc.contains("coeffs")) {
    const auto& c = doc.at("coeffs");
    if (!c.is_array()) throw DomainError("model field 'coeffs' must be an array");
    for (const auto& x : c) {
      if (!x.is_number()) throw DomainError("model coefficients must be numbers");
      coeffs.push_back(x.get<double>());
    }
  }

  RadialMetric metric;
  if (type == "hyperbolic") {
    if (mass != 0.0 || !coeffs.empty()) throw DomainError("hyperbolic model takes no mass or coeffs");
    metric = make_hyperbolic();
  } else if (type == "ads_schwarzschild") {
    if (!coeffs.empty()) throw DomainError("ads_schwarzschild model takes no coeffs");
    metric = make_ads_schwarzschild(mass);
  } else if (type == "perturbed") {
    metric = make_perturbed(mass, coeffs);
  } else {
    throw DomainError(fmt::format("unknown model type '{}'", type));
  }

  const std::string interior = doc.value("interior", std::string("horizon"));
  if (interior == "filled") {
    metric = doc.contains("fill_radius")
                 ? with_filled_interior(metric, number_field(doc, "fill_radius", 0.0))
                 : with_filled_interior(metric);
  } else if (interior != "horizon") {
    throw DomainError(fmt::format("unknown interior '{}'", interior));
  } else if (doc.contains("fill_radius")) {
    throw DomainError("fill_radius requires \"interior\": \"filled\"");
  }
  return metric;
}

ModelSpec load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError(fmt::format("cannot read model file '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(fmt::format("model file '{}' is not valid JSON: {}", path.string(), e.what()));
  }
  return {parse_model(doc), doc, "sha256:" + reports::sha256_hex(bytes)};
}

nlohmann::json model_to_json(const RadialMetric& metric) {
  nlohmann::json doc;
  if (metric.is_exactly_hyperbolic()) {
    doc["type"] = "hyperbolic";
  } else if (metric.perturbation_coeffs().empty()) {
    doc["type"] = "ads_schwarzschild";
    doc["mass"] = metric.mass();
  } else {
    doc["type"] = "perturbed";
    doc["mass"] = metric.mass();
    doc["coeffs"] = std::vector<double>(metric.perturbation_coeffs().begin(),
                                        metric.perturbation_coeffs().end());
  }
  if (metric.interior() == Interior::filled) {
    doc["interior"] = "filled";
    doc["fill_radius"] = metric.fill_radius();
  }
  return doc;
}

}  // namespace ahlab
