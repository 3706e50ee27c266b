#include "fracac/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fracac {

namespace {

double cubic_f(double u) { return u - u * u * u; }

}  // namespace

void SolverConfig::validate() const {
  grid.validate();
  if (!(gamma > 1.0) || gamma > 2.0) {
    throw std::invalid_argument(
        "the Allen-Cahn stepper requires gamma in (1,2]; gamma=1 hits the "
        "cos(pi*gamma/2) singularity of the Riesz prefactor");
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("epsilon must be > 0 for a solver run");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("tau must be > 0");
  }
  if (!(T > 0.0)) {
    throw std::invalid_argument("horizon T must be > 0");
  }
  const double n = T / tau;
  if (std::abs(n - std::round(n)) > 1e-12 * std::max(1.0, n)) {
    throw std::invalid_argument("T/tau must round to an integer within 1e-12");
  }
  if (!(linear_tol > 0.0) || !(cubic_tol > 0.0)) {
    throw std::invalid_argument("tolerances must be > 0");
  }
  if (snapshot_stride < 1) {
    throw std::invalid_argument("snapshot_stride must be >= 1");
  }
}

int SolverConfig::step_count() const {
  return static_cast<int>(std::llround(T / tau));
}

LinearSolveContext::LinearSolveContext(const RieszOperator& op, double tau,
                                       double linear_tol)
    : op_(&op), tau_(tau), linear_tol_(linear_tol) {
  if (tau_ < 0.0) throw std::invalid_argument("tau must be >= 0");
  const int n = op.grid().interior_per_axis();
  if (op.grid().dim == 1 && n <= 2048) {
    mode_ = Mode::dense_cholesky;
    Eigen::MatrixXd m = assemble_dense_1d(op) * (0.5 * tau_ * op.scale());
    m.diagonal().array() += 1.0;
    cholesky_.compute(m);
    if (cholesky_.info() != Eigen::Success) {
      throw SolverError("Cholesky factorization of I + tau/2 A failed");
    }
  } else {
    mode_ = Mode::matrix_free_cg;
  }
}

StateField LinearSolveContext::apply_B(const StateField& v,
                                       StepReport* report) const {
  if (v.grid != op_->grid()) {
    throw std::invalid_argument("field grid does not match solve context");
  }
  if (tau_ == 0.0 || op_->epsilon() == 0.0) {
    return v;  // B = I
  }

  // w = (I - tau/2 A) v
  StateField av = op_->apply(v, ApplyPath::fft);
  StateField w = v;
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    w.values[i] -= 0.5 * tau_ * av.values[i];
  }

  StateField y = StateField::zeros(op_->grid());
  if (mode_ == Mode::dense_cholesky) {
    Eigen::Map<const Eigen::VectorXd> wv(w.values.data(),
                                         static_cast<long>(w.values.size()));
    Eigen::VectorXd sol = cholesky_.solve(wv);
    for (std::size_t i = 0; i < y.values.size(); ++i) {
      y.values[i] = sol(static_cast<long>(i));
    }
    if (report) {
      report->linear_iterations = 0;
      report->linear_residual = 0.0;
    }
    return y;
  }

  // Matrix-free CG on (I + tau/2 A) y = w.
  const auto mat_vec = [&](const StateField& x) {
    StateField ax = op_->apply(x, ApplyPath::fft);
    StateField mx = x;
    for (std::size_t i = 0; i < mx.values.size(); ++i) {
      mx.values[i] += 0.5 * tau_ * ax.values[i];
    }
    return mx;
  };

  const auto dot = [](const StateField& a, const StateField& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      s += a.values[i] * b.values[i];
    }
    return s;
  };

  y = w;  // good initial guess: the system matrix is a small perturbation of I
  StateField residual = mat_vec(y);
  for (std::size_t i = 0; i < residual.values.size(); ++i) {
    residual.values[i] = w.values[i] - residual.values[i];
  }
  const double rhs_norm = std::sqrt(dot(w, w));
  double rr = dot(residual, residual);
  if (rhs_norm == 0.0) return StateField::zeros(op_->grid());

  StateField direction = residual;
  const long max_iter = 10 * static_cast<long>(op_->grid().interior_count());
  long it = 0;
  while (std::sqrt(rr) > linear_tol_ * rhs_norm) {
    if (it++ >= max_iter) {
      throw SolverError("CG did not converge within 10 (M-1)^d iterations");
    }
    StateField ad = mat_vec(direction);
    const double alpha = rr / dot(direction, ad);
    for (std::size_t i = 0; i < y.values.size(); ++i) {
      y.values[i] += alpha * direction.values[i];
      residual.values[i] -= alpha * ad.values[i];
    }
    const double rr_new = dot(residual, residual);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < direction.values.size(); ++i) {
      direction.values[i] = residual.values[i] + beta * direction.values[i];
    }
  }
  if (report) {
    report->linear_iterations = static_cast<int>(it);
    report->linear_residual = std::sqrt(rr) / rhs_norm;
  }
  return y;
}

double pointwise_cubic_solve(double r, double tau, double tol,
                             int* iterations) {
  if (!(tau > 0.0) || tau > 2.0) {
    throw std::domain_error("nodewise cubic is monotone only for tau in (0,2]");
  }
  if (!std::isfinite(r)) {
    throw std::domain_error("nodewise cubic needs a finite right-hand side");
  }
  const double lin = 1.0 - 0.5 * tau;
  const double cub = 0.5 * tau;
  const auto g = [&](double u) { return (lin + cub * u * u) * u; };

  // g is odd and strictly increasing; grow a symmetric bracket from |r|.
  double hi = std::max(1.0, std::abs(r));
  while (g(hi) < std::abs(r)) hi *= 2.0;
  double lo = -hi;

  double u = std::clamp(r, lo, hi);
  int it = 0;
  for (; it < 100; ++it) {
    const double res = g(u) - r;
    if (std::abs(res) <= tol) break;
    if (res > 0.0) {
      hi = u;
    } else {
      lo = u;
    }
    const double dg = lin + 3.0 * cub * u * u;
    double next = u - res / dg;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);  // bisection fallback
    }
    if (next == u) break;  // stagnated at machine precision
    u = next;
  }
  if (iterations) *iterations = it;
  return u;
}

StateField step(const LinearSolveContext& ctx, const StateField& u,
                const SourceFn& source, double t_k, double cubic_tol,
                StepReport* report) {
  const RieszOperator& op = ctx.op();
  if (u.grid != op.grid()) {
    throw std::invalid_argument("state grid does not match solve context");
  }
  if (source && op.grid().dim != 1) {
    throw std::invalid_argument("forced runs are supported in 1D only");
  }
  const double tau = ctx.tau();
  const double half = 0.5 * tau;

  StateField combined = u;
  for (std::size_t i = 0; i < combined.values.size(); ++i) {
    combined.values[i] += half * cubic_f(u.values[i]);
  }
  if (source) {
    for (std::size_t i = 0; i < combined.values.size(); ++i) {
      const double x = op.grid().node(static_cast<int>(i) + 1);
      combined.values[i] += half * source(x, t_k);
    }
  }

  StateField rhs = ctx.apply_B(combined, report);
  if (source) {
    for (std::size_t i = 0; i < rhs.values.size(); ++i) {
      const double x = op.grid().node(static_cast<int>(i) + 1);
      rhs.values[i] += half * source(x, t_k + tau);
    }
  }

  StateField next = StateField::zeros(op.grid());
  int max_cubic = 0;
  for (std::size_t i = 0; i < next.values.size(); ++i) {
    int its = 0;
    next.values[i] = pointwise_cubic_solve(rhs.values[i], tau, cubic_tol, &its);
    max_cubic = std::max(max_cubic, its);
  }
  if (report) report->max_cubic_iterations = max_cubic;
  return next;
}

TrajectoryRecord run(const SolverConfig& config, const StateField& initial,
                     const SourceFn& source) {
  config.validate();
  if (initial.grid != config.grid) {
    throw std::invalid_argument("initial state grid does not match config");
  }

  RieszOperator op(config.grid, config.gamma, config.epsilon);
  LinearSolveContext ctx(op, config.tau, config.linear_tol);

  TrajectoryRecord record;
  record.warnings = step_bound_warnings(op, config.tau);

  const int steps = config.step_count();
  StateField u = initial;

  const auto record_state = [&](int k) {
    const double t = k * config.tau;
    record.times.push_back(t);
    if (config.monitors.max_norm) record.max_norms.push_back(u.max_norm());
    if (config.monitors.energy) {
      record.energies.push_back(discrete_energy(op, u));
    }
    if (config.monitors.snapshots &&
        (k % config.snapshot_stride == 0 || k == steps)) {
      record.snapshots.emplace_back(t, u);
    }
  };

  record_state(0);
  for (int k = 0; k < steps; ++k) {
    StepReport report;
    u = step(ctx, u, source, k * config.tau, config.cubic_tol, &report);
    record.step_reports.push_back(report);
    record_state(k + 1);
  }
  return record;
}

std::vector<std::string> step_bound_warnings(const RieszOperator& op,
                                             double tau) {
  std::vector<std::string> warnings;
  if (tau > 1.0) {
    std::ostringstream msg;
    msg << "maximum-principle condition 0 < tau <= 1 violated (tau=" << tau
        << ")";
    warnings.push_back(msg.str());
  }
  const double tau_bound = op.energy_stability_tau_bound();
  if (tau > tau_bound) {
    std::ostringstream msg;
    msg << "energy-stability step bound violated (tau=" << tau
        << ", bound=" << tau_bound << ")";
    warnings.push_back(msg.str());
  }
  return warnings;
}

double discrete_energy(const RieszOperator& op, const StateField& u) {
  if (u.grid != op.grid()) {
    throw std::invalid_argument("field grid does not match operator grid");
  }
  const double hd = std::pow(u.grid.h(), u.grid.dim);
  double well = 0.0;
  for (double v : u.values) {
    const double q = v * v - 1.0;
    well += 0.25 * q * q;
  }
  StateField au = op.apply(u, ApplyPath::fft);
  return hd * well + 0.5 * inner_product(au, u);
}

}  // namespace fracac
