#include "fracac/exact.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "fracac/coefficients.hpp"

namespace fracac {

namespace {

// 1/Gamma(z), zero at the poles, sign-correct on the negative axis.
long double reciprocal_gamma(long double z) {
  if (z > 0.0L) return std::exp(-std::lgamma(z));
  if (z == std::floor(z)) return 0.0L;
  const auto n = static_cast<long long>(std::floor(-z));
  const long double sign = (n % 2 == 0) ? -1.0L : 1.0L;
  return sign * std::exp(-std::lgamma(z));
}

std::vector<std::int64_t> binomial_row(int n) {
  std::vector<std::int64_t> row(static_cast<std::size_t>(n) + 1, 1);
  for (int k = 1; k < n; ++k) {
    for (int j = k; j >= 1; --j) row[j] += row[j - 1];
  }
  return row;
}

// Rewrite sum c_k x^k as sum d_j (1-x)^j: d_j = sum_k c_k (-1)^j C(k,j).
std::vector<double> reflect_coeffs(const std::vector<double>& c) {
  const int deg = static_cast<int>(c.size()) - 1;
  std::vector<double> d(c.size(), 0.0);
  for (int k = 0; k <= deg; ++k) {
    if (c[static_cast<std::size_t>(k)] == 0.0) continue;
    const auto binom = binomial_row(k);
    for (int j = 0; j <= k; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      d[static_cast<std::size_t>(j)] += c[static_cast<std::size_t>(k)] * sign *
                                        static_cast<double>(binom[j]);
    }
  }
  return d;
}

// sum_k c_k Gamma(k+1)/Gamma(k+1-gamma) y^{k-gamma}: the Riemann-Liouville
// derivative of the polynomial in the variable y. Accumulated in extended
// precision: the alternating degree-12 expansions cancel heavily and the
// convergence anchors sit near 1e-12 absolute.
long double rl_monomial_sum(const std::vector<double>& c, double gamma,
                            double y) {
  const long double g = gamma;
  long double s = 0.0L;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0.0) continue;
    const long double kk = static_cast<long double>(k);
    const long double factor =
        std::exp(std::lgamma(kk + 1.0L)) * reciprocal_gamma(kk + 1.0L - g);
    if (factor == 0.0L) continue;
    s += static_cast<long double>(c[k]) * factor *
         std::pow(static_cast<long double>(y), kk - g);
  }
  return s;
}

}  // namespace

double PolySpec::eval(double x) const {
  double s = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    s = s * x + coeffs[k];
  }
  return s;
}

PolySpec PolySpec::bridge(int p) {
  if (p < 1) throw std::invalid_argument("bridge power must be >= 1");
  const auto binom = binomial_row(p);
  PolySpec spec;
  spec.coeffs.assign(static_cast<std::size_t>(2 * p) + 1, 0.0);
  for (int i = 0; i <= p; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    spec.coeffs[static_cast<std::size_t>(p + i)] =
        sign * static_cast<double>(binom[static_cast<std::size_t>(i)]);
  }
  return spec;
}

double riesz_derivative_poly(const PolySpec& p, double gamma, double x) {
  check_gamma_domain(gamma);
  if (!(x > 0.0 && x < 1.0)) {
    throw std::domain_error("Riesz derivative oracle is defined on (0,1)");
  }
  const long double prefactor =
      -1.0L / (2.0L * std::cos(0.5L * std::numbers::pi_v<long double> *
                               static_cast<long double>(gamma)));
  const long double left = rl_monomial_sum(p.coeffs, gamma, x);
  const long double right =
      rl_monomial_sum(reflect_coeffs(p.coeffs), gamma, 1.0 - x);
  return static_cast<double>(prefactor * (left + right));
}

double manufactured_source(double x, double t, double gamma, double epsilon) {
  static const PolySpec poly = PolySpec::bridge(6);
  const double u_profile = poly.eval(x);
  const double et = std::exp(-t);
  const double u = et * u_profile;
  const double frac = riesz_derivative_poly(poly, gamma, x);
  // s = u_t - eps^2 L u - u + u^3 for u = e^{-t} x^6 (1-x)^6.
  return -2.0 * u - epsilon * epsilon * et * frac + u * u * u;
}

StateField example_initial(InitialProfile profile, const GridSpec& grid,
                           double gamma) {
  grid.validate();
  if (grid.dim != 1) {
    throw std::invalid_argument("example initial profiles are 1D");
  }
  StateField f = StateField::zeros(grid);
  const int n = grid.interior_per_axis();
  for (int j = 1; j <= n; ++j) {
    const double x = grid.node(j);
    double v = 0.0;
    switch (profile) {
      case InitialProfile::poly4:
        v = std::pow(x * (1.0 - x), 4);
        break;
      case InitialProfile::poly6_decay:
        v = std::pow(x * (1.0 - x), 6);
        break;
      case InitialProfile::maxprinciple:
        v = std::pow(x * (1.0 - x), 3.5 + gamma) * std::sin(M_PI * x);
        break;
    }
    f.values[static_cast<std::size_t>(j - 1)] = v;
  }
  return f;
}

}  // namespace fracac
