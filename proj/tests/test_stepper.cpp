#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "fracac/exact.hpp"
#include "fracac/riesz_operator.hpp"
#include "fracac/stepper.hpp"

using namespace fracac;

namespace {

GridSpec make_grid(int m, int dim = 1) {
  GridSpec grid;
  grid.a = 0.0;
  grid.b = 1.0;
  grid.subintervals = m;
  grid.dim = dim;
  return grid;
}

double cubic_residual(double u, double r, double tau) {
  return ((1.0 - 0.5 * tau) + 0.5 * tau * u * u) * u - r;
}

// Independent root finder for the nodewise relation, pure bisection.
double cubic_bisect(double r, double tau) {
  double lo = -10.0, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cubic_residual(mid, r, tau) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE_BEGIN("stepper");

TEST_CASE("nodewise cubic solve: residuals over 10^4 random inputs") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> rdist(-2.0, 2.0);
  std::uniform_real_distribution<double> tdist(1e-6, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const double r = rdist(rng);
    const double tau = tdist(rng);
    int iterations = 0;
    const double u = pointwise_cubic_solve(r, tau, 1e-14, &iterations);
    CHECK(std::abs(cubic_residual(u, r, tau)) <= 1e-14);
    CHECK(iterations >= 1);
  }
}

TEST_CASE("nodewise cubic solve: pinned values") {
  // tau=1: 0.5 u + 0.5 u^3 = r. r = 0.3125 gives exactly u = 0.5.
  CHECK(pointwise_cubic_solve(0.3125, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-13));
  // r = 0.6875: root near 0.82118, cross-checked by bisection.
  const double u = pointwise_cubic_solve(0.6875, 1.0);
  CHECK(u == doctest::Approx(cubic_bisect(0.6875, 1.0)).epsilon(1e-12));
  CHECK(u == doctest::Approx(0.82118).epsilon(1e-4));
  // Odd symmetry.
  CHECK(pointwise_cubic_solve(-0.6875, 1.0) == doctest::Approx(-u).epsilon(1e-12));
  // r = 0 maps to 0 for every admissible tau.
  for (double tau : {0.1, 1.0, 2.0}) {
    CHECK(pointwise_cubic_solve(0.0, tau) == 0.0);
  }
}

TEST_CASE("nodewise cubic solve: domain errors") {
  CHECK_THROWS_AS(pointwise_cubic_solve(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(pointwise_cubic_solve(0.5, -0.1), std::domain_error);
  CHECK_THROWS_AS(pointwise_cubic_solve(0.5, 2.5), std::domain_error);
  CHECK_THROWS_AS(
      pointwise_cubic_solve(std::numeric_limits<double>::quiet_NaN(), 1.0),
      std::domain_error);
  CHECK_THROWS_AS(
      pointwise_cubic_solve(std::numeric_limits<double>::infinity(), 1.0),
      std::domain_error);
}

TEST_CASE("epsilon zero reduces a step to the scalar scheme") {
  // With A = 0 the propagator is the identity and every node evolves under
  // the scalar rule u <- cubic_solve(u + tau/2 u - tau/2 u^3).
  const GridSpec grid = make_grid(16);
  RieszOperator op(grid, 1.5, 0.0);
  const double tau = 0.25;
  LinearSolveContext ctx(op, tau);
  StateField u = StateField::zeros(grid);
  for (std::size_t j = 0; j < u.values.size(); ++j) {
    u.values[j] = -0.9 + 0.12 * static_cast<double>(j);
  }
  const StateField next = step(ctx, u);
  for (std::size_t j = 0; j < u.values.size(); ++j) {
    const double v = u.values[j];
    const double r = v + 0.5 * tau * (v - v * v * v);
    const double scalar = pointwise_cubic_solve(r, tau);
    CHECK(std::abs(next.values[j] - scalar) <= 1e-13);
  }
}

TEST_CASE("zero state is a fixed point") {
  const GridSpec grid = make_grid(32);
  RieszOperator op(grid, 1.4, 0.1);
  LinearSolveContext ctx(op, 0.5);
  const StateField zero = StateField::zeros(grid);
  const StateField next = step(ctx, zero);
  for (double v : next.values) CHECK(v == 0.0);
}

TEST_CASE("one forced step tracks the exact solution") {
  // Exact solution e^{-t} x^6 (1-x)^6; a single step of size tau = h = 1/8
  // must land within the scheme's local accuracy.
  const double gamma = 1.4, epsilon = 0.001, tau = 0.125;
  const GridSpec grid = make_grid(8);
  RieszOperator op(grid, gamma, epsilon);
  LinearSolveContext ctx(op, tau);
  const StateField u0 = example_initial(InitialProfile::poly6_decay, grid, gamma);
  const SourceFn source = [=](double x, double t) {
    return manufactured_source(x, t, gamma, epsilon);
  };
  const StateField u1 = step(ctx, u0, source, 0.0);
  const PolySpec p6 = PolySpec::bridge(6);
  double err = 0.0;
  for (int j = 1; j < 8; ++j) {
    const double exact = std::exp(-tau) * p6.eval(grid.node(j));
    err = std::max(err,
                   std::abs(u1.values[static_cast<std::size_t>(j - 1)] - exact));
  }
  CHECK(err <= 1e-6);
}

TEST_CASE("config validation messages") {
  SolverConfig config;
  config.grid = make_grid(32);
  CHECK_NOTHROW(config.validate());

  SolverConfig bad = config;
  bad.gamma = 1.0;
  try {
    bad.validate();
    FAIL("gamma = 1 must be rejected");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("cos") != std::string::npos);
  }

  bad = config;
  bad.tau = 0.3;
  bad.T = 1.0;  // T/tau not an integer
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.tau = -0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.snapshot_stride = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  CHECK(config.step_count() == 10);
}

TEST_CASE("step-bound warnings name the violated hypothesis") {
  const GridSpec grid = make_grid(100);
  RieszOperator op(grid, 1.5, 0.1);
  CHECK(step_bound_warnings(op, 0.1).empty());

  const auto warn_mp = step_bound_warnings(op, 1.5);
  REQUIRE(!warn_mp.empty());
  CHECK(warn_mp.front().find("maximum-principle") != std::string::npos);

  // Above the energy-stability bound but still <= 1.
  const double bound = op.energy_stability_tau_bound();
  REQUIRE(bound < 1.0);
  const auto warn_en = step_bound_warnings(op, 0.5 * (bound + 1.0));
  REQUIRE(!warn_en.empty());
  CHECK(warn_en.front().find("energy-stability") != std::string::npos);
}

TEST_CASE("maximum principle holds on a small unforced sweep") {
  const GridSpec grid = make_grid(32);
  SolverConfig config;
  config.grid = grid;
  config.epsilon = 0.1;
  config.T = 3.0;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double gamma : {1.2, 1.8}) {
    for (double tau : {0.1, 0.5, 1.0}) {
      config.gamma = gamma;
      config.tau = tau;
      StateField initial = StateField::zeros(grid);
      for (double& v : initial.values) v = dist(rng);
      const TrajectoryRecord record = run(config, initial);
      for (double m : record.max_norms) {
        CHECK(m <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("discrete energy decays below the step bound") {
  const GridSpec grid = make_grid(64);
  RieszOperator op(grid, 1.5, 0.1);
  SolverConfig config;
  config.grid = grid;
  config.gamma = 1.5;
  config.epsilon = 0.1;
  const double tau = 0.9 * op.energy_stability_tau_bound();
  config.tau = tau;
  config.T = 40.0 * tau;  // integer multiple by construction
  const StateField initial =
      example_initial(InitialProfile::maxprinciple, grid, 1.5);
  const TrajectoryRecord record = run(config, initial);
  REQUIRE(record.energies.size() == 41);
  for (std::size_t k = 1; k < record.energies.size(); ++k) {
    CHECK(record.energies[k] <= record.energies[k - 1] + 1e-12);
  }
  CHECK(record.warnings.empty());
}

TEST_CASE("stepping is bitwise deterministic") {
  const GridSpec grid = make_grid(48);
  RieszOperator op(grid, 1.7, 0.1);
  LinearSolveContext ctx(op, 0.3);
  const StateField u = example_initial(InitialProfile::poly4, grid, 1.7);
  const StateField a = step(ctx, u);
  const StateField b = step(ctx, u);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t j = 0; j < a.values.size(); ++j) {
    CHECK(a.values[j] == b.values[j]);
  }
}

TEST_CASE("discrete energy of the zero field") {
  // F(0) = 1/4 at each of the M-1 interior nodes; the quadratic term is zero.
  const GridSpec grid = make_grid(20);
  RieszOperator op(grid, 1.5, 0.1);
  const StateField zero = StateField::zeros(grid);
  CHECK(discrete_energy(op, zero) ==
        doctest::Approx(grid.h() * 19.0 / 4.0).epsilon(1e-14));
}

TEST_CASE("2D propagator matches a dense Kronecker solve") {
  const int m = 8;
  const int n = m - 1;
  const GridSpec grid1 = make_grid(m);
  const GridSpec grid2 = make_grid(m, 2);
  RieszOperator op1(grid1, 1.6, 0.1);
  RieszOperator op2(grid2, 1.6, 0.1);
  const double tau = 0.4;
  LinearSolveContext ctx(op2, tau, 1e-14);
  CHECK(ctx.mode() == LinearSolveContext::Mode::matrix_free_cg);

  // Dense A = scale * (K (x) I + I (x) K).
  const Eigen::MatrixXd k = assemble_dense_1d(op1) * op1.scale();
  const int nn = n * n;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nn, nn);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int row = j * n + i;
      for (int i2 = 0; i2 < n; ++i2) a(row, j * n + i2) += k(i, i2);
      for (int j2 = 0; j2 < n; ++j2) a(row, j2 * n + i) += k(j, j2);
    }
  }
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(nn, nn);
  const Eigen::MatrixXd b_dense =
      (eye + 0.5 * tau * a).ldlt().solve(eye - 0.5 * tau * a);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  StateField v = StateField::zeros(grid2);
  Eigen::VectorXd vv(nn);
  for (int i = 0; i < nn; ++i) {
    const double x = dist(rng);
    v.values[static_cast<std::size_t>(i)] = x;
    vv(i) = x;
  }
  const StateField bv = ctx.apply_B(v);
  const Eigen::VectorXd ref = b_dense * vv;
  for (int i = 0; i < nn; ++i) {
    CHECK(std::abs(bv.values[static_cast<std::size_t>(i)] - ref(i)) <= 1e-10);
  }
}

TEST_SUITE_END();
