#ifndef DDOPT_SPECIAL_HPP
#define DDOPT_SPECIAL_HPP

#include <cmath>

namespace ddopt {

// sin(x)/x, stable through x = 0.
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

// (1 - cos(omega*dt)) / omega^2 = (dt^2/2) * sinc^2(omega*dt/2); finite at omega = 0.
inline double one_minus_cos_over_w2(double omega, double dt) {
  double s = sinc(0.5 * omega * dt);
  return 0.5 * dt * dt * s * s;
}

// trigamma: psi_1(z) = sum_{m>=0} 1/(m+z)^2 for z > 0.
double trigamma(double z);

}  // namespace ddopt

#endif
