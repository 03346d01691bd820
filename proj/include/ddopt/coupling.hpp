#ifndef DDOPT_COUPLING_HPP
#define DDOPT_COUPLING_HPP

#include <cstdlib>
#include <vector>

#include "ddopt/grid.hpp"
#include "ddopt/noise.hpp"

namespace ddopt {

// Symmetric Toeplitz spin-spin coupling, stored as its first row:
// J(i,j) = first_row[|i-j|]. Positive semi-definite for any S(omega) >= 0.
struct CouplingMatrix {
  std::vector<double> first_row;

  int size() const { return static_cast<int>(first_row.size()); }
  double operator()(int i, int j) const {
    return first_row[static_cast<std::size_t>(std::abs(i - j))];
  }
  static CouplingMatrix zero(int n) { return CouplingMatrix{std::vector<double>(n, 0.0)}; }
};

// first_row[k] = (4/pi) * integral_0^omega_max  (1 - cos(w dt))/w^2 * cos(w k dt) * S(w) dw.
// Adaptive Gauss-Kronrod with panel splits at the oscillation scale pi/(k dt) and at the
// spectral breakpoints; the removable singularity at w = 0 is evaluated by series.
// Throws NumericalError naming the offending lag k if rel_tol cannot be reached.
CouplingMatrix build_coupling_matrix(const NoiseSpec& noise, const Grid& grid,
                                     double rel_tol = 1e-8);

}  // namespace ddopt

#endif
