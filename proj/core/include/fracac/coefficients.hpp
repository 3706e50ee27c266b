#pragma once

#include <cstdint>
#include <vector>

namespace fracac {

/// How a coefficient window was produced. The closed form is the production
/// path; the quadrature exists as an independent cross-check.
enum class CoeffMethod { closed_form, quadrature };

/// Symmetric window of the sixth-order fractional difference weights
/// g_m for m = -m_max..m_max at a fixed fractional order.
struct CoefficientTable {
  double gamma = 0.0;
  int m_max = 0;
  std::vector<double> values;  // index m + m_max
  CoeffMethod method = CoeffMethod::closed_form;

  /// Weight at offset m. Throws std::out_of_range for |m| > m_max.
  double at(int m) const;

  /// Weight at offset m, zero outside the window.
  double at_or_zero(int m) const;
};

/// Throws std::domain_error unless gamma is in (0,1) or (1,2].
void check_gamma_domain(double gamma);

/// Weight g_m evaluated from the Gamma-function closed form. Exact rational
/// stencil at gamma == 2, where two bracket denominators vanish.
double coefficient_closed_form(double gamma, int m);

/// Weight g_m as a trapezoidal Fourier coefficient of the symbol on the unit
/// circle. Convergence is only algebraic (the symbol has a cusp at s = 0), so
/// n_samples must be a power of two >= 2^14. Cross-check path, not production.
double coefficient_quadrature(double gamma, int m, std::int64_t n_samples);

/// Symbol of the difference formula:
///   [1 + (g/6) sin^2(z/2) + (g(5g+22)/360) sin^4(z/2)] * [4 sin^2(z/2)]^{g/2}.
/// Nonnegative on [-pi, pi]; this is the generating function of the Toeplitz
/// discretization matrix.
double generating_function_value(double gamma, double z);

/// The order in (1,2] at which the m = +-2 weight changes sign: the unique
/// root of 5g^5 + 132g^4 + 1415g^3 + 6900g^2 + 9380g - 34032 near 1.4746120.
double gamma_star();

/// Build a coefficient window. Values are computed once for m >= 0 and
/// mirrored, so the table is even in m bitwise.
CoefficientTable make_coefficient_table(double gamma, int m_max);

/// Immutable process-wide cache of coefficient windows. Safe for concurrent
/// lookups; the returned reference stays valid for the process lifetime.
const CoefficientTable& coefficient_table(double gamma, int m_max);

}  // namespace fracac
