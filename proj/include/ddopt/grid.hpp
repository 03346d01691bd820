#ifndef DDOPT_GRID_HPP
#define DDOPT_GRID_HPP

#include <cmath>

#include "ddopt/errors.hpp"

namespace ddopt {

// Time discretization of the sensing window [0, T]: N cells of width dt,
// cell i (0-based) covering [i*dt, (i+1)*dt]. Units are microseconds.
struct Grid {
  double T = 0.0;
  double dt = 0.0;
  int N = 0;

  static Grid make(double T_us, double dt_us) {
    if (!(T_us > 0.0) || !(dt_us > 0.0)) {
      throw ConfigError("grid: T and dt must be positive");
    }
    Grid g;
    g.T = T_us;
    g.dt = dt_us;
    g.N = static_cast<int>(std::llround(T_us / dt_us));
    if (g.N < 2) throw ConfigError("grid: need at least 2 cells (T/dt >= 2)");
    if (std::abs(g.N * dt_us - T_us) > 1e-9 * T_us) {
      throw ConfigError("grid: T is not an integer multiple of dt");
    }
    return g;
  }

  double cell_start(int i) const { return i * dt; }
  double cell_end(int i) const { return (i + 1) * dt; }
  double cell_mid(int i) const { return (i + 0.5) * dt; }
};

}  // namespace ddopt

#endif
