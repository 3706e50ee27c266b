#pragma once

#include <vector>

#include "fracac/grid.hpp"

namespace fracac {

/// Polynomial sum c_k x^k on [0,1], extended by zero outside. When used as a
/// Riesz-derivative test function it must vanish at both endpoints.
struct PolySpec {
  std::vector<double> coeffs;

  double eval(double x) const;

  /// x^p (1-x)^p expanded with exact integer binomials.
  static PolySpec bridge(int p);
};

/// Exact Riesz derivative of a zero-extended polynomial at x in (0,1):
/// the left and right Riemann-Liouville monomial derivatives combined with
/// the prefactor -1/(2 cos(pi gamma / 2)). Reduces to the ordinary second
/// derivative at gamma = 2. Throws at gamma = 1 (the cosine vanishes) and at
/// the endpoints.
double riesz_derivative_poly(const PolySpec& p, double gamma, double x);

/// Forcing that makes u(x,t) = e^{-t} x^6 (1-x)^6 an exact solution of
/// u_t = eps^2 L u + u - u^3 + s. Generated from the PDE identity
///   s = u_t - eps^2 L u - u + u^3
/// with the fractional term evaluated through riesz_derivative_poly.
double manufactured_source(double x, double t, double gamma, double epsilon);

enum class InitialProfile {
  poly4,         // x^4 (1-x)^4
  poly6_decay,   // x^6 (1-x)^6, the forced-problem initial state
  maxprinciple,  // x^{3.5+gamma} (1-x)^{3.5+gamma} sin(pi x)
};

/// Samples the named initial condition at the interior nodes of a 1D grid.
StateField example_initial(InitialProfile profile, const GridSpec& grid,
                           double gamma);

}  // namespace fracac
