#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ahlab/radial_model.hpp"

namespace ahlab {

/// Model specification file:
///
///   {"type": "hyperbolic" | "ads_schwarzschild" | "perturbed",
///    "mass": number, "coeffs": [c_2, c_3, ...],
///    "interior": "horizon" | "filled",      (optional, default "horizon")
///    "fill_radius": number}                  (optional, default core + 0.1)
struct ModelSpec {
  RadialMetric metric;
  nlohmann::json source;  // the parsed document, echoed into run manifests
  std::string digest;     // "sha256:<hex>" of the file bytes
};

RadialMetric parse_model(const nlohmann::json& doc);
ModelSpec load_model(const std::filesystem::path& path);
nlohmann::json model_to_json(const RadialMetric& metric);

}  // namespace ahlab
