// Command-line front end: subcommand dispatch, config parsing, CSV/JSON
// emission. Exit codes: 0 success, 2 validation error, 3 solver error,
// 4 I/O error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fracac/coefficients.hpp"
#include "fracac/config.hpp"
#include "fracac/exact.hpp"
#include "fracac/harness.hpp"
#include "fracac/report.hpp"
#include "fracac/riesz_operator.hpp"
#include "fracac/stepper.hpp"

namespace {

using namespace fracac;

struct GlobalOptions {
  std::string config_path;
  std::string csv_path;
  std::string json_path;
  int threads = 0;  // 0: resolve from RIESZ_AC_THREADS, then hardware
  bool quiet = false;
};

int resolve_threads(const GlobalOptions& g) {
  if (g.threads > 0) return g.threads;
  if (const char* env = std::getenv("RIESZ_AC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void deliver(const GlobalOptions& g, const std::string& csv,
             const std::string& json) {
  if (!g.csv_path.empty()) write_text_file(g.csv_path, csv);
  if (!g.json_path.empty()) write_text_file(g.json_path, json);
  if (g.csv_path.empty() && g.json_path.empty() && !g.quiet) {
    std::cout << csv;
  }
}

void print_warnings(const GlobalOptions& g,
                    const std::vector<std::string>& warnings) {
  if (g.quiet) return;
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::string sci16(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

// ---------------------------------------------------------------- coeffs --

int cmd_coeffs(const GlobalOptions& g, double gamma, int mmax) {
  const CoefficientTable table = make_coefficient_table(gamma, mmax);
  deliver(g, csv_coefficients(table), "");
  return 0;
}

// ----------------------------------------------------------- riesz-apply --

std::vector<double> read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read samples file: " + path);
  std::vector<double> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find_last_of(',');
    const std::string field =
        comma == std::string::npos ? line : line.substr(comma + 1);
    try {
      samples.push_back(std::stod(field));
    } catch (const std::exception&) {
      if (samples.empty()) continue;  // header row
      throw std::invalid_argument("bad numeric field in " + path + ": " +
                                  field);
    }
  }
  return samples;
}

int cmd_riesz_apply(const GlobalOptions& g, double gamma, int m,
                    const std::string& function, const std::string& path_name,
                    const std::string& input_path) {
  GridSpec grid;
  grid.a = 0.0;
  grid.b = 1.0;
  grid.subintervals = m;
  grid.dim = 1;
  grid.validate();

  std::vector<double> samples(static_cast<std::size_t>(m) + 1, 0.0);
  const bool have_oracle = function == "poly4";
  if (have_oracle) {
    for (int j = 1; j < m; ++j) {
      const double x = grid.node(j);
      samples[static_cast<std::size_t>(j)] = std::pow(x * (1.0 - x), 4);
    }
  } else if (function == "custom-csv") {
    if (input_path.empty()) {
      throw std::invalid_argument("--function custom-csv requires --input");
    }
    samples = read_samples_csv(input_path);
    if (samples.size() != static_cast<std::size_t>(m) + 1) {
      throw std::invalid_argument("expected " + std::to_string(m + 1) +
                                  " samples (closed grid), got " +
                                  std::to_string(samples.size()));
    }
  } else {
    throw std::invalid_argument("unknown --function: " + function);
  }

  std::vector<double> approx;
  if (path_name.empty()) {
    approx = apply_riesz_formula(gamma, grid.h(), samples);
  } else {
    // Operator route at epsilon = 1: A = h^{-gamma} K, so the formula value
    // -h^{-gamma} sum g_m u is -(A u).
    const ApplyPath path =
        path_name == "dense" ? ApplyPath::dense : ApplyPath::fft;
    RieszOperator op(grid, gamma, 1.0);
    StateField u = StateField::zeros(grid);
    for (int j = 1; j < m; ++j) {
      u.values[static_cast<std::size_t>(j - 1)] =
          samples[static_cast<std::size_t>(j)];
    }
    const StateField au = op.apply(u, path);
    approx.resize(static_cast<std::size_t>(m - 1));
    for (std::size_t i = 0; i < approx.size(); ++i) {
      approx[i] = -au.values[i];
    }
  }

  static const PolySpec poly4 = PolySpec::bridge(4);
  std::string csv = "x,approx,exact,abserr\n";
  for (int j = 1; j < m; ++j) {
    const double x = grid.node(j);
    const double a = approx[static_cast<std::size_t>(j - 1)];
    csv += sci16(x) + "," + sci16(a) + ",";
    if (have_oracle) {
      const double e = riesz_derivative_poly(poly4, gamma, x);
      csv += sci16(e) + "," + sci16(std::abs(a - e));
    } else {
      csv += ",";
    }
    csv += "\n";
  }
  deliver(g, csv, "");
  return 0;
}

// ------------------------------------------------------------------- run --

int cmd_run(const GlobalOptions& g, const std::string& trajectory_csv,
            const std::string& snapshots_dir, const std::string& initial_name) {
  if (g.config_path.empty()) {
    throw std::invalid_argument("run requires --config PATH");
  }
  RunManifest manifest = parse_config_file(g.config_path);
  manifest.csv_path = trajectory_csv.empty() ? g.csv_path : trajectory_csv;
  manifest.json_path = g.json_path;
  print_warnings(g, manifest.warnings);

  SolverConfig config = manifest.config;
  config.monitors.max_norm = true;
  config.monitors.energy = true;
  config.monitors.snapshots = !snapshots_dir.empty();

  InitialProfile profile = InitialProfile::maxprinciple;
  if (initial_name == "poly4") {
    profile = InitialProfile::poly4;
  } else if (initial_name == "poly6") {
    profile = InitialProfile::poly6_decay;
  } else if (initial_name != "maxprinciple") {
    throw std::invalid_argument("unknown --initial: " + initial_name);
  }
  const StateField initial = example_initial(profile, config.grid, config.gamma);

  const TrajectoryRecord record = run(config, initial);

  const std::string csv = csv_trajectory(record);
  if (!manifest.csv_path.empty()) write_text_file(manifest.csv_path, csv);
  if (!manifest.json_path.empty()) {
    write_text_file(manifest.json_path, json_trajectory(record, &manifest));
  }
  if (manifest.csv_path.empty() && manifest.json_path.empty() && !g.quiet) {
    std::cout << csv;
  }

  if (!snapshots_dir.empty()) {
    for (std::size_t i = 0; i < record.snapshots.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof(name), "/snapshot_%06zu.csv", i);
      write_text_file(snapshots_dir + name,
                      csv_snapshot(record.snapshots[i].second));
    }
  }
  return 0;
}

// ---------------------------------------------------------------- tables --

int cmd_table1(const GlobalOptions& g) {
  const std::vector<double> gammas = {1.1, 1.3, 1.5, 1.7, 1.9, 2.0};
  const std::vector<double> hs = {1.0 / 20, 1.0 / 30, 1.0 / 40, 1.0 / 50,
                                  1.0 / 60};
  const ConvergenceReport report = convergence_space_formula(gammas, hs);
  deliver(g, csv_convergence(report), json_convergence(report));
  return 0;
}

int cmd_table2(const GlobalOptions& g) {
  const std::vector<double> gammas = {0.1, 0.3, 0.5, 0.7, 0.9};
  const std::vector<double> hs = {1.0 / 20, 1.0 / 30, 1.0 / 40, 1.0 / 50,
                                  1.0 / 60};
  const ConvergenceReport report = convergence_space_formula(gammas, hs);
  deliver(g, csv_convergence(report), json_convergence(report));
  return 0;
}

int cmd_table3(const GlobalOptions& g) {
  const std::vector<double> gammas = {1.2, 1.4, 1.6, 1.8};
  const std::vector<std::pair<double, double>> ladder = {
      {1.0 / 8, 1.0 / 8}, {1.0 / 64, 1.0 / 16}, {1.0 / 512, 1.0 / 32}};
  const ConvergenceReport report =
      convergence_full(gammas, ladder, 0.001, resolve_threads(g));
  deliver(g, csv_convergence(report), json_convergence(report));
  return 0;
}

int cmd_maxprinciple(const GlobalOptions& g, double h, double epsilon,
                     double T) {
  const std::vector<double> gammas = {1.2, 1.5, 1.8};
  const std::vector<double> taus = {1.0, 0.5, 0.1, 0.05};
  const MaxPrincipleReport report = max_principle_experiment(
      gammas, taus, h, epsilon, T, resolve_threads(g));
  if (!g.quiet) {
    std::cerr << "global max norm over all series: " << report.global_max
              << (report.global_max <= 1.0 + 1e-12 ? " (bounded by 1)"
                                                   : " (EXCEEDS 1)")
              << "\n";
  }
  deliver(g, csv_max_principle(report), json_max_principle(report));
  return 0;
}

int cmd_energy(const GlobalOptions& g, double gamma, double tau, double h,
               double epsilon, double T) {
  const EnergySeries series = energy_experiment(gamma, tau, h, epsilon, T);
  if (!g.quiet) {
    std::cerr << "tau=" << series.tau << " (bound " << series.tau_bound
              << "), energy " << (series.monotone ? "non-increasing" : "NOT monotone")
              << "\n";
  }
  deliver(g, csv_energy(series), json_energy(series));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sixth-order Riesz fractional Allen-Cahn solver"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOptions g;
  app.add_option("--config", g.config_path, "JSON config file");
  app.add_option("--csv", g.csv_path, "CSV output path");
  app.add_option("--json", g.json_path, "JSON output path");
  app.add_option("--threads", g.threads,
                 "worker threads (default: RIESZ_AC_THREADS, then hardware)");
  app.add_flag("--quiet", g.quiet, "suppress stdout/stderr chatter");

  double gamma = 1.5, tau = 0.0, h = 0.01, epsilon = 0.1, T = 20.0;
  int mmax = 16, m = 20;
  std::string function = "poly4", path_name, input_path;
  std::string trajectory_csv, snapshots_dir, initial_name = "maxprinciple";

  auto* coeffs = app.add_subcommand("coeffs", "emit coefficient table g_m");
  coeffs->add_option("--gamma", gamma)->required();
  coeffs->add_option("--mmax", mmax)->required();

  auto* riesz = app.add_subcommand(
      "riesz-apply", "apply the sixth-order formula and compare to the oracle");
  riesz->add_option("--gamma", gamma)->required();
  riesz->add_option("--m", m, "subintervals of [0,1]")->required();
  riesz->add_option("--function", function, "poly4 | custom-csv");
  riesz->add_option("--path", path_name, "dense | fft (default: direct formula)")
      ->check(CLI::IsMember({"dense", "fft"}));
  riesz->add_option("--input", input_path, "closed-grid samples CSV");

  auto* runcmd = app.add_subcommand("run", "run the Allen-Cahn scheme");
  runcmd->add_option("--trajectory-csv", trajectory_csv);
  runcmd->add_option("--snapshots", snapshots_dir, "snapshot output directory");
  runcmd->add_option("--initial", initial_name,
                     "maxprinciple | poly4 | poly6");

  app.add_subcommand("table1", "formula convergence, gamma in (1,2]");
  app.add_subcommand("table2", "formula convergence, gamma in (0,1)");
  app.add_subcommand("table3", "full-scheme convergence, manufactured source");

  auto* maxp = app.add_subcommand("maxprinciple", "max-norm evolution sweeps");
  maxp->set_help_flag("--help", "print help");
  maxp->add_option("--h", h);
  maxp->add_option("--eps", epsilon);
  maxp->add_option("--T", T);

  auto* energy = app.add_subcommand("energy", "discrete-energy evolution");
  energy->set_help_flag("--help", "print help");
  energy->add_option("--gamma", gamma);
  energy->add_option("--tau", tau, "step size; <= 0 selects 0.9x the bound");
  energy->add_option("--h", h);
  energy->add_option("--eps", epsilon);
  energy->add_option("--T", T);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (coeffs->parsed()) return cmd_coeffs(g, gamma, mmax);
    if (riesz->parsed()) {
      return cmd_riesz_apply(g, gamma, m, function, path_name, input_path);
    }
    if (runcmd->parsed()) {
      return cmd_run(g, trajectory_csv, snapshots_dir, initial_name);
    }
    if (app.get_subcommand("table1")->parsed()) return cmd_table1(g);
    if (app.get_subcommand("table2")->parsed()) return cmd_table2(g);
    if (app.get_subcommand("table3")->parsed()) return cmd_table3(g);
    if (maxp->parsed()) return cmd_maxprinciple(g, h, epsilon, T);
    if (energy->parsed()) return cmd_energy(g, gamma, tau, h, epsilon, T);
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
}
