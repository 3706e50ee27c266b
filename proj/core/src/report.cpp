#include "fracac/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fracac {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string sci(double v, const char* fmt = "%.16e") {
  char buf[40];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

void append_meta(ordered_json& doc, const RunManifest* manifest) {
  doc["version"] = kArtifactVersion;
  if (manifest) {
    doc["config"] = ordered_json::parse(config_to_json(manifest->config));
    doc["warnings"] = manifest->warnings;
  }
}

ordered_json convergence_rows(const ConvergenceReport& report) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row;
    row["gamma"] = r.gamma;
    row["tau"] = r.tau;
    row["h"] = r.h;
    row["max_abs_error"] = r.max_abs_error;
    if (r.temporal_order) {
      row["temporal_order"] = *r.temporal_order;
    } else {
      row["temporal_order"] = nullptr;
    }
    if (r.spatial_order) {
      row["spatial_order"] = *r.spatial_order;
    } else {
      row["spatial_order"] = nullptr;
    }
    row["seconds"] = r.seconds;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string csv_coefficients(const CoefficientTable& table) {
  std::string out = "m,g_m\n";
  for (int m = -table.m_max; m <= table.m_max; ++m) {
    out += std::to_string(m);
    out += ',';
    out += sci(table.at(m), "%.15e");
    out += '\n';
  }
  return out;
}

std::string csv_convergence(const ConvergenceReport& report) {
  std::string out = "gamma,tau,h,max_abs_error,temporal_order,spatial_order\n";
  for (const auto& r : report.rows) {
    out += sci(r.gamma) + "," + sci(r.tau) + "," + sci(r.h) + "," +
           sci(r.max_abs_error) + ",";
    if (r.temporal_order) out += sci(*r.temporal_order);
    out += ",";
    if (r.spatial_order) out += sci(*r.spatial_order);
    out += "\n";
  }
  return out;
}

std::string csv_max_principle(const MaxPrincipleReport& report) {
  std::string out = "gamma,tau,t,max_norm\n";
  for (const auto& s : report.series) {
    for (std::size_t k = 0; k < s.times.size(); ++k) {
      out += sci(s.gamma) + "," + sci(s.tau) + "," + sci(s.times[k]) + "," +
             sci(s.max_norms[k]) + "\n";
    }
  }
  return out;
}

std::string csv_energy(const EnergySeries& series) {
  std::string out = "t,energy\n";
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    out += sci(series.times[k]) + "," + sci(series.energies[k]) + "\n";
  }
  return out;
}

std::string csv_trajectory(const TrajectoryRecord& record) {
  std::string out = "k,t,max_norm,energy\n";
  for (std::size_t k = 0; k < record.times.size(); ++k) {
    out += std::to_string(k);
    out += ',';
    out += sci(record.times[k]);
    out += ',';
    if (k < record.max_norms.size()) out += sci(record.max_norms[k]);
    out += ',';
    if (k < record.energies.size()) out += sci(record.energies[k]);
    out += '\n';
  }
  return out;
}

std::string csv_snapshot(const StateField& field) {
  const GridSpec& grid = field.grid;
  std::string out = grid.dim == 2 ? "x,y,u\n" : "x,u\n";
  if (grid.dim > 2) {
    throw std::invalid_argument("snapshot CSV supports d <= 2");
  }
  const int n = grid.interior_per_axis();
  std::size_t idx = 0;
  if (grid.dim == 1) {
    for (int j = 1; j <= n; ++j) {
      out += sci(grid.node(j)) + "," + sci(field.values[idx++]) + "\n";
    }
  } else {
    for (int jy = 1; jy <= n; ++jy) {
      for (int jx = 1; jx <= n; ++jx) {
        out += sci(grid.node(jx)) + "," + sci(grid.node(jy)) + "," +
               sci(field.values[idx++]) + "\n";
      }
    }
  }
  return out;
}

std::string json_convergence(const ConvergenceReport& report,
                             const RunManifest* manifest) {
  ordered_json doc;
  append_meta(doc, manifest);
  doc["epsilon"] = report.epsilon;
  doc["T"] = report.T;
  doc["oracle"] = report.oracle;
  doc["rows"] = convergence_rows(report);
  return doc.dump(2) + "\n";
}

std::string json_max_principle(const MaxPrincipleReport& report,
                               const RunManifest* manifest) {
  ordered_json doc;
  append_meta(doc, manifest);
  doc["h"] = report.h;
  doc["epsilon"] = report.epsilon;
  doc["T"] = report.T;
  doc["global_max"] = report.global_max;
  ordered_json series = ordered_json::array();
  for (const auto& s : report.series) {
    ordered_json entry;
    entry["gamma"] = s.gamma;
    entry["tau"] = s.tau;
    entry["global_max"] = s.global_max;
    entry["exceeded"] = s.exceeded;
    entry["seconds"] = s.seconds;
    entry["times"] = s.times;
    entry["max_norms"] = s.max_norms;
    series.push_back(std::move(entry));
  }
  doc["series"] = std::move(series);
  return doc.dump(2) + "\n";
}

std::string json_energy(const EnergySeries& series,
                        const RunManifest* manifest) {
  ordered_json doc;
  append_meta(doc, manifest);
  doc["gamma"] = series.gamma;
  doc["tau"] = series.tau;
  doc["tau_bound"] = series.tau_bound;
  doc["tau_bound_source"] = "energy-stability step bound";
  doc["monotone"] = series.monotone;
  doc["seconds"] = series.seconds;
  doc["times"] = series.times;
  doc["energies"] = series.energies;
  return doc.dump(2) + "\n";
}

std::string json_trajectory(const TrajectoryRecord& record,
                            const RunManifest* manifest) {
  ordered_json doc;
  append_meta(doc, manifest);
  doc["warnings"] = record.warnings;
  doc["times"] = record.times;
  doc["max_norms"] = record.max_norms;
  doc["energies"] = record.energies;
  ordered_json steps = ordered_json::array();
  for (const auto& s : record.step_reports) {
    ordered_json entry;
    entry["linear_iterations"] = s.linear_iterations;
    entry["linear_residual"] = s.linear_residual;
    entry["max_cubic_iterations"] = s.max_cubic_iterations;
    steps.push_back(std::move(entry));
  }
  doc["step_reports"] = std::move(steps);
  return doc.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::ios_base::failure("cannot open for writing: " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw std::ios_base::failure("write failed: " + path);
  }
}

}  // namespace fracac
