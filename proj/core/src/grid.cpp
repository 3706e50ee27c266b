#include "fracac/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracac {

std::size_t GridSpec::interior_count() const {
  std::size_t n = 1;
  for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(subintervals - 1);
  return n;
}

void GridSpec::validate() const {
  if (subintervals < 4) {
    throw std::invalid_argument("grid needs M >= 4 subintervals, got M=" +
                                std::to_string(subintervals));
  }
  if (!(b > a)) {
    throw std::invalid_argument("domain endpoints must satisfy a < b");
  }
  if (dim < 1 || dim > 3) {
    throw std::invalid_argument("dimension must be 1, 2 or 3");
  }
}

StateField StateField::zeros(const GridSpec& grid) {
  grid.validate();
  StateField f;
  f.grid = grid;
  f.values.assign(grid.interior_count(), 0.0);
  return f;
}

double StateField::max_norm() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double StateField::l2_norm() const {
  return std::sqrt(inner_product(*this, *this));
}

double inner_product(const StateField& u, const StateField& v) {
  if (u.grid != v.grid) {
    throw std::invalid_argument("inner product of fields on different grids");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    s += u.values[i] * v.values[i];
  }
  return std::pow(u.grid.h(), u.grid.dim) * s;
}

}  // namespace fracac
