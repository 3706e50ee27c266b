#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fracac {

struct ConvergenceRow {
  double gamma = 0.0;
  double tau = 0.0;  // zero for the space-only formula study
  double h = 0.0;
  double max_abs_error = 0.0;
  std::optional<double> temporal_order;
  std::optional<double> spatial_order;
  double seconds = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double epsilon = 0.0;
  double T = 0.0;
  std::string oracle;
};

/// Formula-only convergence study: the sixth-order approximation of the Riesz
/// derivative of x^4 (1-x)^4 on [0,1] against the analytic oracle. The error
/// is the max over interior nodes in the middle half [1/4, 3/4]: the test
/// function vanishes only to fourth order at the endpoints, so the formula is
/// sixth-order accurate away from the boundary layer and the reference errors
/// are measured there. Orders are computed between consecutive rows of the
/// same gamma, never copied.
ConvergenceReport convergence_space_formula(std::span<const double> gammas,
                                            std::span<const double> hs);

/// Full-scheme convergence on the forced problem with exact solution
/// e^{-t} x^6 (1-x)^6, error in max norm at t = 1. The ladder refines tau and
/// h simultaneously; temporal order is measured against the tau ratio and
/// spatial order against the h ratio.
ConvergenceReport convergence_full(
    std::span<const double> gammas,
    std::span<const std::pair<double, double>> tau_h_ladder, double epsilon,
    int threads = 1);

struct MaxNormSeries {
  double gamma = 0.0;
  double tau = 0.0;
  std::vector<double> times;
  std::vector<double> max_norms;
  double global_max = 0.0;
  bool exceeded = false;  // any excursion above 1 + 1e-12
  double seconds = 0.0;
};

struct MaxPrincipleReport {
  std::vector<MaxNormSeries> series;
  double h = 0.0, epsilon = 0.0, T = 0.0;
  double global_max = 0.0;
};

/// Unforced runs from the tiny bridge-times-sine initial profile, recording
/// the max-norm evolution per (gamma, tau) cell.
MaxPrincipleReport max_principle_experiment(std::span<const double> gammas,
                                            std::span<const double> taus,
                                            double h, double epsilon, double T,
                                            int threads = 1);

struct EnergySeries {
  double gamma = 0.0;
  double tau = 0.0;
  double tau_bound = 0.0;  // energy-stability step bound for (gamma, eps, h)
  std::vector<double> times;
  std::vector<double> energies;
  bool monotone = false;  // non-increasing within 1e-12 per step
  double seconds = 0.0;
};

/// Single unforced run tracking the discrete energy; tau <= 0 selects
/// 0.9x the energy-stability bound.
EnergySeries energy_experiment(double gamma, double tau, double h,
                               double epsilon, double T);

}  // namespace fracac
