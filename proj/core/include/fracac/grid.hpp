#pragma once

#include <cstddef>
#include <vector>

namespace fracac {

/// Uniform square grid on a d-dimensional box [a,b]^d with M subintervals per
/// axis. Interior nodes carry the unknowns; the boundary is implicit zeros.
struct GridSpec {
  double a = 0.0;
  double b = 1.0;
  int subintervals = 0;  // M
  int dim = 1;

  double h() const { return (b - a) / subintervals; }
  int interior_per_axis() const { return subintervals - 1; }
  std::size_t interior_count() const;
  double node(int j) const { return a + j * h(); }

  /// Throws std::invalid_argument if M < 4, b <= a, or dim not in {1,2,3}.
  void validate() const;

  bool operator==(const GridSpec&) const = default;
};

/// Flat real field over the interior nodes, lexicographic with the first axis
/// fastest. Zero Dirichlet boundary is implied, never stored.
struct StateField {
  GridSpec grid;
  std::vector<double> values;

  static StateField zeros(const GridSpec& grid);

  double max_norm() const;
  /// Discrete L2 norm sqrt(h^d * sum u_j^2).
  double l2_norm() const;
};

/// Discrete L2 inner product h^d * sum u_j v_j. Throws on grid mismatch.
double inner_product(const StateField& u, const StateField& v);

}  // namespace fracac
