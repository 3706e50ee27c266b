#include "fracac/coefficients.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace fracac {

namespace {

// Sign of Gamma(x) for non-pole arguments. Gamma alternates sign on the
// negative axis: negative on (-1,0), positive on (-2,-1), ...
int gamma_sign(double x) {
  if (x > 0.0) return 1;
  const auto n = static_cast<long long>(std::floor(-x));
  return (n % 2 == 0) ? -1 : 1;
}

}  // namespace

void check_gamma_domain(double gamma) {
  if (!(gamma > 0.0) || gamma == 1.0 || gamma > 2.0) {
    throw std::domain_error(
        "fractional order must lie in (0,1) or (1,2], got gamma=" +
        std::to_string(gamma));
  }
}

double CoefficientTable::at(int m) const {
  const int a = std::abs(m);
  if (a > m_max) {
    throw std::out_of_range("coefficient offset " + std::to_string(m) +
                            " outside window m_max=" + std::to_string(m_max));
  }
  return values[static_cast<std::size_t>(m + m_max)];
}

double CoefficientTable::at_or_zero(int m) const {
  const int a = std::abs(m);
  if (a > m_max) return 0.0;
  return values[static_cast<std::size_t>(m + m_max)];
}

double coefficient_closed_form(double gamma, int m) {
  check_gamma_domain(gamma);
  const int ma = std::abs(m);

  if (gamma == 2.0) {
    // Bracket denominators (gamma-2m+2), (gamma-2m+4) vanish at m = 2, 3; the
    // limit is the classical sixth-order central stencil for u''.
    switch (ma) {
      case 0: return 49.0 / 18.0;
      case 1: return -3.0 / 2.0;
      case 2: return 3.0 / 20.0;
      case 3: return -1.0 / 90.0;
      default: return 0.0;
    }
  }

  // Extended precision throughout: the convergence anchors sit near 1e-12
  // absolute, so double-rounding in the coefficients would be visible there.
  const long double g = gamma;
  const long double half = 0.5L * g;
  const long double a = half - ma + 1.0L;  // negative non-integer for large |m|
  const long double b = half + ma + 1.0L;

  // (-1)^m Gamma(gamma+1) / (Gamma(a) Gamma(b)) through log-Gamma with
  // explicit sign tracking; log-Gamma of negative arguments is handled by the
  // library's reflection, so large |m| neither overflows nor loses sign.
  long double sign = (ma % 2 == 0) ? 1.0L : -1.0L;
  sign *= gamma_sign(static_cast<double>(a));
  const long double log_pref =
      std::lgamma(g + 1.0L) - std::lgamma(a) - std::lgamma(b);

  const long double g1 = g + 1.0L;
  const long double g2 = g + 2.0L;
  const long double g3 = g + 3.0L;
  const long double g4 = g + 4.0L;
  const long double two_m = 2.0L * ma;
  const long double bracket =
      1.0L +
      g * g1 * g2 / (6.0L * (g - two_m + 2.0L) * (g + two_m + 2.0L)) +
      g * g1 * g2 * g3 * g4 * (5.0L * g + 22.0L) /
          (360.0L * (g - two_m + 4.0L) * (g - two_m + 2.0L) *
           (g + two_m + 4.0L) * (g + two_m + 2.0L));

  return static_cast<double>(sign * std::exp(log_pref) * bracket);
}

double generating_function_value(double gamma, double z) {
  check_gamma_domain(gamma);
  const double s = std::sin(0.5 * z);
  const double s2 = s * s;
  const double bracket =
      1.0 + gamma / 6.0 * s2 + gamma * (5.0 * gamma + 22.0) / 360.0 * s2 * s2;
  return bracket * std::pow(4.0 * s2, 0.5 * gamma);
}

double gamma_star() {
  // Newton iteration on the quintic whose root marks the m = +-2 sign change.
  const auto p = [](double g) {
    return ((((5.0 * g + 132.0) * g + 1415.0) * g + 6900.0) * g + 9380.0) * g -
           34032.0;
  };
  const auto dp = [](double g) {
    return (((25.0 * g + 528.0) * g + 4245.0) * g + 13800.0) * g + 9380.0;
  };
  double g = 1.5;
  for (int it = 0; it < 100; ++it) {
    const double f = p(g);
    if (std::abs(f) <= 1e-12) return g;
    const double step = f / dp(g);
    g -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * g) {
      // Stagnated at the double-precision fixed point.
      return g;
    }
  }
  throw std::runtime_error("gamma_star Newton iteration did not converge");
}

namespace {

// Quadrature coefficients are produced for all offsets at once by a single
// real FFT of the sampled symbol, then cached. Only a prefix of offsets is
// kept; the cross-checks never reach beyond a few thousand.
constexpr int kQuadStoredMax = 8192;

struct QuadKey {
  double gamma;
  std::int64_t n;
  bool operator<(const QuadKey& o) const {
    return gamma != o.gamma ? gamma < o.gamma : n < o.n;
  }
};

std::vector<double> quadrature_prefix(double gamma, std::int64_t n) {
  const auto nn = static_cast<std::size_t>(n);
  double* in = fftw_alloc_real(nn);
  fftw_complex* out = fftw_alloc_complex(nn / 2 + 1);
  {
    static std::mutex plan_mutex;
    std::scoped_lock lock(plan_mutex);
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    const double step = 2.0 * M_PI / static_cast<double>(n);
    for (std::size_t k = 0; k < nn; ++k) {
      in[k] = generating_function_value(gamma, static_cast<double>(k) * step);
    }
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  const std::size_t keep =
      std::min<std::size_t>(nn / 2, kQuadStoredMax) + 1;
  std::vector<double> prefix(keep);
  for (std::size_t m = 0; m < keep; ++m) {
    prefix[m] = out[m][0] / static_cast<double>(n);  // symbol is even: real DFT
  }
  fftw_free(in);
  fftw_free(out);
  return prefix;
}

const std::vector<double>& quadrature_cache(double gamma, std::int64_t n) {
  static std::mutex mutex;
  static std::map<QuadKey, std::unique_ptr<std::vector<double>>> cache;
  std::scoped_lock lock(mutex);
  auto& slot = cache[QuadKey{gamma, n}];
  if (!slot) {
    slot = std::make_unique<std::vector<double>>(quadrature_prefix(gamma, n));
  }
  return *slot;
}

}  // namespace

double coefficient_quadrature(double gamma, int m, std::int64_t n_samples) {
  check_gamma_domain(gamma);
  if (n_samples < (std::int64_t{1} << 14) ||
      (n_samples & (n_samples - 1)) != 0) {
    throw std::invalid_argument(
        "quadrature sample count must be a power of two >= 2^14");
  }
  const int ma = std::abs(m);
  if (ma > kQuadStoredMax || ma > n_samples / 2) {
    throw std::out_of_range("quadrature offset too large: m=" + std::to_string(m));
  }
  return quadrature_cache(gamma, n_samples)[static_cast<std::size_t>(ma)];
}

CoefficientTable make_coefficient_table(double gamma, int m_max) {
  check_gamma_domain(gamma);
  if (m_max < 0) throw std::invalid_argument("m_max must be nonnegative");
  CoefficientTable table;
  table.gamma = gamma;
  table.m_max = m_max;
  table.method = CoeffMethod::closed_form;
  table.values.assign(static_cast<std::size_t>(2 * m_max + 1), 0.0);
  for (int m = 0; m <= m_max; ++m) {
    const double g = coefficient_closed_form(gamma, m);
    table.values[static_cast<std::size_t>(m_max + m)] = g;
    table.values[static_cast<std::size_t>(m_max - m)] = g;
  }
  return table;
}

const CoefficientTable& coefficient_table(double gamma, int m_max) {
  static std::mutex mutex;
  static std::map<std::pair<double, int>, std::unique_ptr<CoefficientTable>> cache;
  std::scoped_lock lock(mutex);
  auto& slot = cache[{gamma, m_max}];
  if (!slot) {
    slot = std::make_unique<CoefficientTable>(make_coefficient_table(gamma, m_max));
  }
  return *slot;
}

}  // namespace fracac
