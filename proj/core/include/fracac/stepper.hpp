#pragma once

#include <Eigen/Cholesky>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracac/grid.hpp"
#include "fracac/riesz_operator.hpp"

namespace fracac {

/// Raised when a linear solve fails; the systems are SPD, so this signals
/// ill-conditioning or a bug rather than an expected condition.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MonitorFlags {
  bool max_norm = true;
  bool energy = true;
  bool snapshots = false;

  bool operator==(const MonitorFlags&) const = default;
};

struct SolverConfig {
  double gamma = 1.5;
  double epsilon = 0.1;
  double tau = 0.1;
  double T = 1.0;
  GridSpec grid;
  double linear_tol = 1e-12;  // CG relative residual
  double cubic_tol = 1e-14;   // nodewise implicit solve residual
  MonitorFlags monitors;
  int snapshot_stride = 1;

  /// Throws std::invalid_argument on domain violations (gamma outside (1,2],
  /// tau <= 0, non-integer T/tau, ...). Step-bound violations are warnings,
  /// not errors; see run().
  void validate() const;

  int step_count() const;

  bool operator==(const SolverConfig&) const = default;
};

struct StepReport {
  int linear_iterations = 0;  // 0 for the factorized path
  double linear_residual = 0.0;
  int max_cubic_iterations = 0;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> max_norms;
  std::vector<double> energies;  // present iff the energy monitor is on
  std::vector<std::pair<double, StateField>> snapshots;
  std::vector<StepReport> step_reports;
  std::vector<std::string> warnings;
};

/// Source term sampled pointwise; only meaningful for 1D forced problems.
using SourceFn = std::function<double(double x, double t)>;

/// Propagator context for B = (I + tau/2 A)^{-1} (I - tau/2 A). The solve
/// uses a cached dense Cholesky factorization for 1D small grids and
/// matrix-free CG with the FFT matvec otherwise (no preconditioner: the
/// spectrum sits in (1, 1 + tau/2 lambda_max)).
class LinearSolveContext {
 public:
  enum class Mode { dense_cholesky, matrix_free_cg };

  LinearSolveContext(const RieszOperator& op, double tau,
                     double linear_tol = 1e-12);

  const RieszOperator& op() const { return *op_; }
  double tau() const { return tau_; }
  Mode mode() const { return mode_; }

  /// B v. CG terminates at relative residual <= linear_tol; throws
  /// SolverError after 10 (M-1)^d iterations.
  StateField apply_B(const StateField& v, StepReport* report = nullptr) const;

 private:
  const RieszOperator* op_;
  double tau_;
  double linear_tol_;
  Mode mode_;
  Eigen::LLT<Eigen::MatrixXd> cholesky_;  // dense mode only
};

/// Unique real root of (1 - tau/2) u + (tau/2) u^3 = r, the nodewise implicit
/// relation of the scheme. Strictly monotone for tau in (0,2]; safeguarded
/// Newton with a bisection fallback, |residual| <= tol. Optionally reports
/// the iteration count.
double pointwise_cubic_solve(double r, double tau, double tol = 1e-14,
                             int* iterations = nullptr);

/// One step U -> B(U + tau/2 f(U) [+ tau/2 s(t_k)]) [+ tau/2 s(t_{k+1})]
/// followed by the exact nodewise cubic resolve. The implicit nonlinearity is
/// diagonal, so no global iteration is involved.
StateField step(const LinearSolveContext& ctx, const StateField& u,
                const SourceFn& source = nullptr, double t_k = 0.0,
                double cubic_tol = 1e-14, StepReport* report = nullptr);

/// Full trajectory over N = T/tau steps with per-step monitors. Warns (in
/// TrajectoryRecord::warnings) when tau violates the maximum-principle
/// condition tau <= 1 or the energy-stability step bound; such runs are
/// legitimate experiments and proceed.
TrajectoryRecord run(const SolverConfig& config, const StateField& initial,
                     const SourceFn& source = nullptr);

/// Named theorem-hypothesis violations for stepping op with step size tau:
/// tau outside the maximum-principle condition 0 < tau <= 1, or tau above the
/// energy-stability step bound. Used by run() and by config parsing.
std::vector<std::string> step_bound_warnings(const RieszOperator& op,
                                             double tau);

/// E_h(U) = h^d sum F(U_j) + (h^d / 2) U^T A U with F(u) = (1/4)(u^2-1)^2,
/// the discrete Ginzburg-Landau energy; d >= 2 reuses the h^d weight.
double discrete_energy(const RieszOperator& op, const StateField& u);

}  // namespace fracac
