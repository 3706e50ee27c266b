#include <algorithm>
#include <cmath>
#include <ios>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "fracac/config.hpp"
#include "fracac/report.hpp"

using namespace fracac;

namespace {

SolverConfig sample_config() {
  SolverConfig c;
  c.gamma = 1.4;
  c.epsilon = 0.05;
  c.tau = 0.25;
  c.T = 2.0;
  c.grid.a = 0.0;
  c.grid.b = 1.0;
  c.grid.subintervals = 40;
  c.grid.dim = 2;
  c.linear_tol = 1e-11;
  c.cubic_tol = 1e-13;
  c.snapshot_stride = 4;
  return c;
}

}  // namespace

TEST_SUITE_BEGIN("config_report");

TEST_CASE("config JSON round-trips to an equal config") {
  const SolverConfig c = sample_config();
  const RunManifest parsed = parse_config_text(config_to_json(c));
  CHECK(parsed.config == c);
  // All keys were present, so nothing was defaulted.
  CHECK(parsed.resolved_defaults.empty());

  SolverConfig d;
  d.grid.subintervals = 64;
  const RunManifest parsed_default = parse_config_text(config_to_json(d));
  CHECK(parsed_default.config == d);
}

TEST_CASE("minimal config applies and reports defaults") {
  const RunManifest m = parse_config_text(
      R"({"gamma": 1.5, "epsilon": 0.1, "tau": 0.25, "T": 2, "M": 32})");
  CHECK(m.config.grid.dim == 1);
  CHECK(m.config.grid.a == 0.0);
  CHECK(m.config.grid.b == 1.0);
  CHECK(m.config.linear_tol == 1e-12);
  CHECK(m.config.cubic_tol == 1e-14);
  CHECK(m.config.snapshot_stride == 1);
  CHECK(m.resolved_defaults.size() == 5);
  CHECK(m.warnings.empty());
}

TEST_CASE("parse failures carry key context") {
  try {
    parse_config_text(
        R"({"gamma": 1.5, "epsilon": 0.1, "tau": 0.5, "T": 2, "M": 32, "bogus": 1})");
    FAIL("unknown key must be rejected");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }

  try {
    parse_config_text(R"({"gamma": 1.5})");
    FAIL("missing keys must be rejected");
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    CHECK(what.find("missing") != std::string::npos);
    CHECK(what.find("tau") != std::string::npos);
    CHECK(what.find("M") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_config_text("not json"), std::invalid_argument);

  try {
    parse_config_text(
        R"({"gamma": 1.0, "epsilon": 0.1, "tau": 0.5, "T": 2, "M": 32})");
    FAIL("gamma = 1 must be rejected");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("fractional order") != std::string::npos);
  }
}

TEST_CASE("parse_config_file raises I/O failure for unreadable paths") {
  CHECK_THROWS_AS(parse_config_file("/nonexistent/dir/config.json"),
                  std::ios_base::failure);
}

TEST_CASE("config warnings mirror the step bounds") {
  RunManifest m = parse_config_text(
      R"({"gamma": 1.5, "epsilon": 0.1, "tau": 1.5, "T": 3, "M": 100})");
  REQUIRE(!m.warnings.empty());
  CHECK(m.warnings.front().find("maximum-principle") != std::string::npos);
  CHECK(config_warnings(m.config) == m.warnings);
}

TEST_CASE("manifest round-trips") {
  RunManifest m;
  m.config = sample_config();
  m.resolved_defaults = {"dimension=1"};
  m.warnings = {"example warning"};
  m.csv_path = "/tmp/out.csv";
  m.json_path = "/tmp/out.json";
  const RunManifest back = manifest_from_json(manifest_to_json(m));
  CHECK(back == m);
}

TEST_CASE("coefficient CSV: header, determinism") {
  const CoefficientTable table = make_coefficient_table(1.5, 4);
  const std::string csv = csv_coefficients(table);
  CHECK(csv.rfind("m,g_m\n", 0) == 0);
  CHECK(csv == csv_coefficients(table));  // byte-stable
  // One line per weight plus the header.
  const auto lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 1 + (2 * 4 + 1));
}

TEST_CASE("empty convergence report serializes to a lone header") {
  ConvergenceReport report;
  CHECK(csv_convergence(report) ==
        "gamma,tau,h,max_abs_error,temporal_order,spatial_order\n");
}

TEST_CASE("trajectory CSV header and shape") {
  TrajectoryRecord record;
  record.times = {0.0, 0.5};
  record.max_norms = {1.0, 0.5};
  record.energies = {0.25, 0.125};
  const std::string csv = csv_trajectory(record);
  CHECK(csv.rfind("k,t,max_norm,energy\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv == csv_trajectory(record));
}

TEST_CASE("JSON artifacts carry the version string and config echo") {
  ConvergenceReport report;
  ConvergenceRow row;
  row.gamma = 1.5;
  row.h = 0.05;
  row.max_abs_error = 1e-9;
  report.rows.push_back(row);

  const std::string bare = json_convergence(report);
  CHECK(bare.find("fracac-1.0.0") != std::string::npos);
  CHECK(bare.find("max_abs_error") != std::string::npos);

  RunManifest m;
  m.config = sample_config();
  const std::string with_config = json_convergence(report, &m);
  CHECK(with_config.find("\"config\"") != std::string::npos);
  CHECK(with_config.find("\"gamma\"") != std::string::npos);
}

TEST_CASE("write_text_file raises I/O failure on bad targets") {
  CHECK_THROWS_AS(write_text_file("/nonexistent/dir/out.csv", "x"),
                  std::ios_base::failure);
}

TEST_SUITE_END();
