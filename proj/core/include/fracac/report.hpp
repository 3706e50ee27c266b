#pragma once

#include <string>

#include "fracac/coefficients.hpp"
#include "fracac/config.hpp"
#include "fracac/harness.hpp"
#include "fracac/stepper.hpp"

namespace fracac {

/// Version string stamped into every JSON report.
inline constexpr const char* kArtifactVersion = "fracac-1.0.0";

/// CSV emitters. Every document starts with a header row; numeric fields use
/// %.16e except the coefficient table, which uses 16 significant digits
/// (%.15e). Missing order entries are left empty. Output is byte-stable for
/// equal inputs.
std::string csv_coefficients(const CoefficientTable& table);
std::string csv_convergence(const ConvergenceReport& report);
std::string csv_max_principle(const MaxPrincipleReport& report);
std::string csv_energy(const EnergySeries& series);
std::string csv_trajectory(const TrajectoryRecord& record);
std::string csv_snapshot(const StateField& field);

/// JSON emitters: stable key order, config echo where a manifest is supplied,
/// artifact version string, and per-cell timing.
std::string json_convergence(const ConvergenceReport& report,
                             const RunManifest* manifest = nullptr);
std::string json_max_principle(const MaxPrincipleReport& report,
                               const RunManifest* manifest = nullptr);
std::string json_energy(const EnergySeries& series,
                        const RunManifest* manifest = nullptr);
std::string json_trajectory(const TrajectoryRecord& record,
                            const RunManifest* manifest = nullptr);

/// Writes content to path; throws std::ios_base::failure on I/O failure with
/// the target path in the message.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace fracac
