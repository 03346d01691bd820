#include "ddopt/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ddopt/errors.hpp"
#include "ddopt/quadrature.hpp"
#include "ddopt/special.hpp"

namespace ddopt {

namespace {

// merge spectral breakpoints with a uniform grid at the cos(w k dt) oscillation scale
std::vector<double> panel_seeds(const NoiseSpec& noise, double osc_scale) {
  std::vector<double> pts = noise.breakpoints();
  const double span = noise.omega_max;
  if (osc_scale > 0.0 && osc_scale < span) {
    int n = static_cast<int>(std::ceil(span / osc_scale));
    for (int i = 1; i < n; ++i) pts.push_back(span * i / n);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

CouplingMatrix build_coupling_matrix(const NoiseSpec& noise, const Grid& grid,
                                     double rel_tol) {
  noise.validate();
  const double dt = grid.dt;
  const int N = grid.N;
  CouplingMatrix J;
  J.first_row.assign(static_cast<std::size_t>(N), 0.0);

  const double prefactor = 4.0 / std::numbers::pi;
  double row_scale = 0.0;

  for (int k = 0; k < N; ++k) {
    const double kdt = k * dt;
    auto integrand = [&](double w) {
      return one_minus_cos_over_w2(w, dt) * std::cos(w * kdt) * noise.value(w);
    };
    const double osc = std::numbers::pi / (std::max(k, 1) * dt);
    const auto pts = panel_seeds(noise, osc);
    const double abs_tol = (k == 0) ? 0.0 : rel_tol * row_scale;
    const QuadResult q = integrate_adaptive(integrand, pts, rel_tol, abs_tol);
    if (!q.converged) {
      throw NumericalError("coupling quadrature did not reach tolerance " +
                           std::to_string(rel_tol) + " at lag k = " + std::to_string(k));
    }
    J.first_row[static_cast<std::size_t>(k)] = prefactor * q.value;
    if (k == 0) row_scale = std::abs(prefactor * q.value);
  }
  return J;
}

}  // namespace ddopt
