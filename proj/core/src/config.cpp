#include "fracac/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fracac/coefficients.hpp"
#include "fracac/riesz_operator.hpp"

namespace fracac {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::set<std::string> kRequiredKeys = {"gamma", "epsilon", "tau", "T",
                                             "M"};
const std::set<std::string> kOptionalKeys = {
    "dimension", "domain", "linear_tol", "cubic_tol", "snapshot_stride"};

double number_at(const ordered_json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) {
    throw std::invalid_argument("config key '" + key + "' must be a number");
  }
  return v.get<double>();
}

int integer_at(const ordered_json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) {
    throw std::invalid_argument("config key '" + key + "' must be an integer");
  }
  return v.get<int>();
}

ordered_json config_to_doc(const SolverConfig& c) {
  ordered_json doc;
  doc["gamma"] = c.gamma;
  doc["epsilon"] = c.epsilon;
  doc["tau"] = c.tau;
  doc["T"] = c.T;
  doc["M"] = c.grid.subintervals;
  doc["dimension"] = c.grid.dim;
  doc["domain"] = {c.grid.a, c.grid.b};
  doc["linear_tol"] = c.linear_tol;
  doc["cubic_tol"] = c.cubic_tol;
  doc["snapshot_stride"] = c.snapshot_stride;
  return doc;
}

SolverConfig config_from_doc(const ordered_json& doc,
                             std::vector<std::string>* resolved_defaults) {
  std::vector<std::string> missing;
  for (const auto& key : kRequiredKeys) {
    if (!doc.contains(key)) missing.push_back(key);
  }
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << "missing required config keys:";
    for (const auto& key : missing) msg << " " << key;
    msg << " (required: M, T, epsilon, gamma, tau)";
    throw std::invalid_argument(msg.str());
  }
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!kRequiredKeys.contains(key) && !kOptionalKeys.contains(key)) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }

  SolverConfig c;
  c.gamma = number_at(doc, "gamma");
  c.epsilon = number_at(doc, "epsilon");
  c.tau = number_at(doc, "tau");
  c.T = number_at(doc, "T");
  c.grid.subintervals = integer_at(doc, "M");

  const auto defaulted = [&](const std::string& key, const std::string& value) {
    if (resolved_defaults) resolved_defaults->push_back(key + "=" + value);
  };

  if (doc.contains("dimension")) {
    c.grid.dim = integer_at(doc, "dimension");
  } else {
    c.grid.dim = 1;
    defaulted("dimension", "1");
  }
  if (doc.contains("domain")) {
    const auto& dom = doc.at("domain");
    if (!dom.is_array() || dom.size() != 2 || !dom[0].is_number() ||
        !dom[1].is_number()) {
      throw std::invalid_argument(
          "config key 'domain' must be a two-number array [a, b]");
    }
    c.grid.a = dom[0].get<double>();
    c.grid.b = dom[1].get<double>();
  } else {
    c.grid.a = 0.0;
    c.grid.b = 1.0;
    defaulted("domain", "[0, 1]");
  }
  if (doc.contains("linear_tol")) {
    c.linear_tol = number_at(doc, "linear_tol");
  } else {
    defaulted("linear_tol", "1e-12");
  }
  if (doc.contains("cubic_tol")) {
    c.cubic_tol = number_at(doc, "cubic_tol");
  } else {
    defaulted("cubic_tol", "1e-14");
  }
  if (doc.contains("snapshot_stride")) {
    c.snapshot_stride = integer_at(doc, "snapshot_stride");
  } else {
    defaulted("snapshot_stride", "1");
  }

  // Domain-level validation here; run() separately narrows gamma to (1,2].
  check_gamma_domain(c.gamma);
  c.grid.validate();
  if (!(c.epsilon >= 0.0)) {
    throw std::invalid_argument("epsilon must be >= 0");
  }
  if (!(c.tau > 0.0)) {
    throw std::invalid_argument("tau must be > 0");
  }
  if (!(c.T > 0.0)) {
    throw std::invalid_argument("horizon T must be > 0");
  }
  const double n = c.T / c.tau;
  if (std::abs(n - std::round(n)) > 1e-12 * std::max(1.0, n)) {
    throw std::invalid_argument("T/tau must round to an integer within 1e-12");
  }
  if (!(c.linear_tol > 0.0) || !(c.cubic_tol > 0.0)) {
    throw std::invalid_argument("tolerances must be > 0");
  }
  if (c.snapshot_stride < 1) {
    throw std::invalid_argument("snapshot_stride must be >= 1");
  }
  return c;
}

ordered_json parse_doc(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
}

}  // namespace

std::vector<std::string> config_warnings(const SolverConfig& config) {
  if (!(config.gamma > 1.0) || config.gamma > 2.0 || !(config.epsilon > 0.0)) {
    return {};
  }
  RieszOperator op(config.grid, config.gamma, config.epsilon);
  return step_bound_warnings(op, config.tau);
}

RunManifest parse_config_text(const std::string& text) {
  RunManifest manifest;
  manifest.config =
      config_from_doc(parse_doc(text), &manifest.resolved_defaults);
  manifest.warnings = config_warnings(manifest.config);
  return manifest;
}

RunManifest parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::ios_base::failure("cannot read config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string config_to_json(const SolverConfig& config) {
  return config_to_doc(config).dump(2) + "\n";
}

std::string manifest_to_json(const RunManifest& manifest) {
  ordered_json doc;
  doc["config"] = config_to_doc(manifest.config);
  doc["resolved_defaults"] = manifest.resolved_defaults;
  doc["warnings"] = manifest.warnings;
  doc["csv_path"] = manifest.csv_path;
  doc["json_path"] = manifest.json_path;
  return doc.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  const ordered_json doc = parse_doc(text);
  RunManifest manifest;
  manifest.config = config_from_doc(doc.at("config"), nullptr);
  manifest.resolved_defaults =
      doc.at("resolved_defaults").get<std::vector<std::string>>();
  manifest.warnings = doc.at("warnings").get<std::vector<std::string>>();
  manifest.csv_path = doc.at("csv_path").get<std::string>();
  manifest.json_path = doc.at("json_path").get<std::string>();
  return manifest;
}

}  // namespace fracac
