#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fracac/coefficients.hpp"

using namespace fracac;

TEST_SUITE_BEGIN("coefficients");

TEST_CASE("gamma domain gate") {
  CHECK_THROWS_AS(check_gamma_domain(1.0), std::domain_error);
  CHECK_THROWS_AS(check_gamma_domain(0.0), std::domain_error);
  CHECK_THROWS_AS(check_gamma_domain(2.0 + 1e-12), std::domain_error);
  CHECK_THROWS_AS(check_gamma_domain(-0.3), std::domain_error);
  CHECK_NOTHROW(check_gamma_domain(0.5));
  CHECK_NOTHROW(check_gamma_domain(1.5));
  CHECK_NOTHROW(check_gamma_domain(2.0));
}

TEST_CASE("gamma=2 recovers the classical sixth-order Laplacian stencil") {
  CHECK(std::abs(coefficient_closed_form(2.0, 0) - 49.0 / 18.0) <= 1e-14);
  CHECK(std::abs(coefficient_closed_form(2.0, 1) - (-1.5)) <= 1e-14);
  CHECK(std::abs(coefficient_closed_form(2.0, 2) - 3.0 / 20.0) <= 1e-14);
  CHECK(std::abs(coefficient_closed_form(2.0, 3) - (-1.0 / 90.0)) <= 1e-14);
  for (int m = 4; m <= 12; ++m) {
    CHECK(std::abs(coefficient_closed_form(2.0, m)) <= 1e-14);
  }
}

TEST_CASE("generating function: special value, symmetry, nonnegativity") {
  // At gamma=2, z=pi the symbol equals the alternating stencil sum
  // 49/18 + 2*(3/2 + 3/20 + 1/90) = 272/45.
  const double v = generating_function_value(2.0, std::numbers::pi);
  CHECK(v == doctest::Approx(272.0 / 45.0).epsilon(1e-13));
  CHECK(generating_function_value(2.0, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
  for (double gamma : {0.4, 1.3, 1.9}) {
    for (double z : {0.1, 0.7, 1.9, 3.0}) {
      const double plus = generating_function_value(gamma, z);
      const double minus = generating_function_value(gamma, -z);
      CHECK(plus == doctest::Approx(minus).epsilon(1e-14));
      CHECK(plus >= 0.0);
    }
  }
}

TEST_CASE("quadrature coefficients cross-check the closed form") {
  for (double gamma : {0.5, 1.2, 1.5, 1.9}) {
    for (int m : {0, 1, 2, 5}) {
      const double cf = coefficient_closed_form(gamma, m);
      const double q = coefficient_quadrature(gamma, m, 1 << 16);
      CHECK(std::abs(q - cf) <= 1e-7);
    }
  }
}

TEST_CASE("coefficient signs across the order range") {
  const double gs = gamma_star();
  for (int i = 0; i < 20; ++i) {
    const double gamma = 1.0 + (i + 0.5) / 20.0;  // 20-point grid inside (1,2)
    const double g0 = coefficient_closed_form(gamma, 0);
    const double g1 = coefficient_closed_form(gamma, 1);
    const double g2 = coefficient_closed_form(gamma, 2);
    CHECK(g0 > 0.0);
    CHECK(g1 < 0.0);
    if (gamma < gs - 1e-3) CHECK(g2 < 0.0);
    if (gamma > gs + 1e-3) CHECK(g2 > 0.0);
    CHECK(coefficient_closed_form(gamma, 3) < 0.0);
  }
}

TEST_CASE("sign-change order located by an independent bisection") {
  // Root of 5g^5 + 132g^4 + 1415g^3 + 6900g^2 + 9380g - 34032 in (1,2).
  const auto p = [](double g) {
    return ((((5.0 * g + 132.0) * g + 1415.0) * g + 6900.0) * g + 9380.0) * g -
           34032.0;
  };
  double lo = 1.0, hi = 2.0;
  REQUIRE(p(lo) < 0.0);
  REQUIRE(p(hi) > 0.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (p(mid) < 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  CHECK(std::abs(gamma_star() - root) <= 5e-7);
  CHECK(std::abs(gamma_star() - 1.4746120) <= 5e-7);
  // The m=2 weight really changes sign there.
  CHECK(coefficient_closed_form(gamma_star() - 1e-4, 2) < 0.0);
  CHECK(coefficient_closed_form(gamma_star() + 1e-4, 2) > 0.0);
}

TEST_CASE("weights sum toward zero (symbol vanishes at z=0)") {
  for (double gamma : {1.3, 1.8}) {
    const CoefficientTable table = make_coefficient_table(gamma, 2000);
    double sum = 0.0;
    for (int m = 2000; m >= 1; --m) {
      sum += 2.0 * table.at(m);
    }
    sum += table.at(0);
    CHECK(std::abs(sum) <= 5e-4);  // tail decays like m^{-1-gamma}
  }
}

TEST_CASE("table windows are mirrored and cached") {
  const CoefficientTable table = make_coefficient_table(1.5, 8);
  CHECK(table.m_max == 8);
  CHECK(table.values.size() == 17);
  for (int m = 0; m <= 8; ++m) {
    CHECK(table.at(m) == table.at(-m));  // bitwise
  }
  CHECK(table.at_or_zero(9) == 0.0);
  CHECK_THROWS_AS(table.at(9), std::out_of_range);

  const CoefficientTable& a = coefficient_table(1.5, 64);
  const CoefficientTable& b = coefficient_table(1.5, 64);
  CHECK(&a == &b);
}

TEST_SUITE_END();
