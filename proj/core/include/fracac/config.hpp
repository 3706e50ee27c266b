#pragma once

#include <string>
#include <vector>

#include "fracac/stepper.hpp"

namespace fracac {

/// Parsed run description: the validated config plus everything an artifact
/// consumer needs to interpret it (which values were defaulted, which theorem
/// hypotheses the chosen tau violates, where output goes).
struct RunManifest {
  SolverConfig config;
  std::vector<std::string> resolved_defaults;
  std::vector<std::string> warnings;
  std::string csv_path;
  std::string json_path;

  bool operator==(const RunManifest&) const = default;
};

/// Parses a flat JSON config document. Required keys: gamma, epsilon, tau, T,
/// M. Optional keys with defaults: dimension (1), domain ([0,1]), linear_tol,
/// cubic_tol, snapshot_stride. Unknown keys are errors. gamma is accepted on
/// (0,1) u (1,2]; the stepper's own validation narrows to (1,2] for runs.
/// Throws std::invalid_argument with key/position context on parse or
/// validation failure.
RunManifest parse_config_text(const std::string& text);

/// parse_config_text on the file's contents; throws std::ios_base::failure if
/// the file cannot be read.
RunManifest parse_config_file(const std::string& path);

/// Flat JSON document that parse_config_text maps back to an equal config.
std::string config_to_json(const SolverConfig& config);

/// Manifest serialization; manifest_from_json(manifest_to_json(m)) == m.
std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& text);

/// The warnings run() would emit for this config: named theorem-hypothesis
/// violations (tau outside (0,1], tau above the energy-stability bound).
/// Empty for gamma outside (1,2] or epsilon <= 0, where the bounds are
/// undefined.
std::vector<std::string> config_warnings(const SolverConfig& config);

}  // namespace fracac
