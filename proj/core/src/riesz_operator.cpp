#include "fracac/riesz_operator.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace fracac {

namespace {
std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

// Circulant embedding of the symmetric Toeplitz action: the first column of K
// extended to length L (next power of two >= 2(M-1)) as
//   [g_0, g_1, ..., g_{M-2}, 0, ..., 0, g_{M-2}, ..., g_1],
// whose DFT is real. One forward/backward transform pair per line.
struct RieszOperator::FftContext {
  int n = 0;            // line length M-1
  int length = 0;       // embedding size L
  std::vector<double> eigenvalues;  // real DFT of the embedding column, L/2+1
  fftw_plan forward = nullptr;      // r2c, length L
  fftw_plan backward = nullptr;     // c2r, length L

  FftContext(const CoefficientTable& coeffs, int n_in) : n(n_in) {
    length = 2;
    while (length < 2 * n) length *= 2;

    double* in = fftw_alloc_real(length);
    fftw_complex* out = fftw_alloc_complex(length / 2 + 1);
    {
      std::scoped_lock lock(fftw_plan_mutex());
      forward = fftw_plan_dft_r2c_1d(length, in, out, FFTW_ESTIMATE);
      backward = fftw_plan_dft_c2r_1d(length, out, in, FFTW_ESTIMATE);
    }

    for (int k = 0; k < length; ++k) in[k] = 0.0;
    in[0] = coeffs.at(0);
    for (int k = 1; k <= n - 1; ++k) {
      in[k] = coeffs.at(k);
      in[length - k] = coeffs.at(k);
    }
    fftw_execute_dft_r2c(forward, in, out);
    eigenvalues.resize(static_cast<std::size_t>(length / 2 + 1));
    for (int k = 0; k <= length / 2; ++k) {
      eigenvalues[static_cast<std::size_t>(k)] = out[k][0];
    }
    fftw_free(in);
    fftw_free(out);
  }

  ~FftContext() {
    std::scoped_lock lock(fftw_plan_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

RieszOperator::RieszOperator(GridSpec grid, double gamma, double epsilon)
    : grid_(grid), gamma_(gamma), epsilon_(epsilon) {
  grid_.validate();
  check_gamma_domain(gamma_);
  if (epsilon_ < 0.0) {
    throw std::invalid_argument("interfacial parameter must be >= 0");
  }
  const int n = grid_.interior_per_axis();
  coeffs_ = &coefficient_table(gamma_, n - 1);
  fft_ = std::make_unique<FftContext>(*coeffs_, n);
}

RieszOperator::~RieszOperator() = default;
RieszOperator::RieszOperator(RieszOperator&&) noexcept = default;
RieszOperator& RieszOperator::operator=(RieszOperator&&) noexcept = default;

double RieszOperator::scale() const {
  return epsilon_ * epsilon_ / std::pow(grid_.h(), gamma_);
}

void RieszOperator::apply_k_line_dense(const double* in, double* out, int n) const {
  const double* g = coeffs_->values.data() + coeffs_->m_max;  // g[0] centered
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += g[j - i] * in[j];
    out[i] = s;
  }
}

void RieszOperator::apply_k_line_fft(const double* in, double* out, int n,
                                     double* scratch_real,
                                     void* scratch_complex) const {
  auto* cplx = static_cast<fftw_complex*>(scratch_complex);
  const int length = fft_->length;
  for (int k = 0; k < n; ++k) scratch_real[k] = in[k];
  for (int k = n; k < length; ++k) scratch_real[k] = 0.0;
  fftw_execute_dft_r2c(fft_->forward, scratch_real, cplx);
  for (int k = 0; k <= length / 2; ++k) {
    const double lambda = fft_->eigenvalues[static_cast<std::size_t>(k)];
    cplx[k][0] *= lambda;
    cplx[k][1] *= lambda;
  }
  fftw_execute_dft_c2r(fft_->backward, cplx, scratch_real);
  const double inv = 1.0 / length;
  for (int k = 0; k < n; ++k) out[k] = scratch_real[k] * inv;
}

StateField RieszOperator::apply(const StateField& v, ApplyPath path) const {
  StateField out = StateField::zeros(grid_);
  apply(v, out, path);
  return out;
}

void RieszOperator::apply(const StateField& v, StateField& out,
                          ApplyPath path) const {
  if (v.grid != grid_) {
    throw std::invalid_argument("field grid does not match operator grid");
  }
  if (out.grid != grid_) out = StateField::zeros(grid_);

  const int n = grid_.interior_per_axis();
  const std::size_t total = grid_.interior_count();
  std::fill(out.values.begin(), out.values.end(), 0.0);

  std::vector<double> line_in(static_cast<std::size_t>(n));
  std::vector<double> line_out(static_cast<std::size_t>(n));

  double* scratch_real = nullptr;
  fftw_complex* scratch_complex = nullptr;
  if (path == ApplyPath::fft) {
    scratch_real = fftw_alloc_real(static_cast<std::size_t>(fft_->length));
    scratch_complex =
        fftw_alloc_complex(static_cast<std::size_t>(fft_->length / 2 + 1));
  }

  for (int axis = 0; axis < grid_.dim; ++axis) {
    std::size_t stride = 1;
    for (int a = 0; a < axis; ++a) stride *= static_cast<std::size_t>(n);
    const std::size_t block = stride * static_cast<std::size_t>(n);
    for (std::size_t base_block = 0; base_block < total; base_block += block) {
      for (std::size_t offset = 0; offset < stride; ++offset) {
        const std::size_t base = base_block + offset;
        for (int j = 0; j < n; ++j) {
          line_in[static_cast<std::size_t>(j)] =
              v.values[base + static_cast<std::size_t>(j) * stride];
        }
        if (path == ApplyPath::dense) {
          apply_k_line_dense(line_in.data(), line_out.data(), n);
        } else {
          apply_k_line_fft(line_in.data(), line_out.data(), n, scratch_real,
                           scratch_complex);
        }
        for (int j = 0; j < n; ++j) {
          out.values[base + static_cast<std::size_t>(j) * stride] +=
              line_out[static_cast<std::size_t>(j)];
        }
      }
    }
  }

  if (scratch_real) fftw_free(scratch_real);
  if (scratch_complex) fftw_free(scratch_complex);

  const double s = scale();
  for (double& x : out.values) x *= s;
}

double RieszOperator::eigenvalue_bound() const {
  if (gamma_ <= 1.0) {
    throw std::domain_error("eigenvalue bound requires gamma in (1,2]");
  }
  const double g0 = coeffs_->at(0);
  double row_sum = g0;
  if (gamma_ > gamma_star()) {
    row_sum += 2.0 * coeffs_->at(2);
  }
  return 2.0 * scale() * row_sum * grid_.dim;
}

double RieszOperator::energy_stability_tau_bound() const {
  const double lambda = eigenvalue_bound();
  return 4.0 / (1.0 + std::sqrt(1.0 + 8.0 * lambda));
}

double RieszOperator::spectral_radius_B(double tau) const {
  if (gamma_ <= 1.0) {
    throw std::domain_error("spectral radius helper requires gamma in (1,2]");
  }
  const int n = grid_.interior_per_axis();
  if (n > 512) {
    throw std::length_error("spectral_radius_B is a dense helper, M-1 <= 512");
  }
  Eigen::MatrixXd a1 = assemble_dense_1d(*this) * scale();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a1,
                                                     Eigen::EigenvaluesOnly);
  double rho = 0.0;
  for (int j = 0; j < n; ++j) {
    const double l = eig.eigenvalues()(j);
    rho = std::max(rho, std::abs(1.0 - 0.5 * tau * l) / (1.0 + 0.5 * tau * l));
  }
  return rho;
}

Eigen::MatrixXd assemble_dense_1d(const RieszOperator& op) {
  const int n = op.grid().interior_per_axis();
  if (n > 4096) {
    throw std::length_error("dense 1D assembly is guarded at M-1 <= 4096");
  }
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      k(i, j) = op.coeffs().at(j - i);
    }
  }
  return k;
}

std::vector<double> apply_riesz_formula(double gamma, double h,
                                        std::span<const double> samples) {
  check_gamma_domain(gamma);
  if (samples.size() < 5) {
    throw std::invalid_argument("need at least M=4 subintervals of samples");
  }
  const int m_nodes = static_cast<int>(samples.size()) - 1;  // M
  if (samples.front() != 0.0 || samples.back() != 0.0) {
    throw std::invalid_argument("endpoint samples must vanish (zero extension)");
  }
  const CoefficientTable& coeffs = coefficient_table(gamma, m_nodes - 1);
  const double prefactor = -std::pow(h, -gamma);
  std::vector<double> out(static_cast<std::size_t>(m_nodes - 1));
  for (int j = 1; j <= m_nodes - 1; ++j) {
    // Extended-precision accumulation: the convergence anchors for small
    // gamma sit near 1e-12 absolute, within reach of double rounding noise.
    long double s = 0.0L;
    // u(x_j - m h) = samples[j - m]; zero outside the closed grid.
    for (int m = j - m_nodes; m <= j; ++m) {
      s += static_cast<long double>(coeffs.at(m)) *
           static_cast<long double>(samples[static_cast<std::size_t>(j - m)]);
    }
    out[static_cast<std::size_t>(j - 1)] =
        static_cast<double>(prefactor * s);
  }
  return out;
}

}  // namespace fracac
