#include "ddopt/special.hpp"

#include <stdexcept>

namespace ddopt {

// Recurrence psi_1(z) = psi_1(z+1) + 1/z^2 up to z >= 8, then the asymptotic
// series psi_1(z) ~ 1/z + 1/(2z^2) + sum B_2n / z^(2n+1).
double trigamma(double z) {
  if (!(z > 0.0)) throw std::domain_error("trigamma: requires z > 0");
  double acc = 0.0;
  while (z < 8.0) {
    acc += 1.0 / (z * z);
    z += 1.0;
  }
  double inv = 1.0 / z;
  double inv2 = inv * inv;
  // Bernoulli coefficients B_2/2! * 2!, ...: 1/6, -1/30, 1/42, -1/30, 5/66
  double series = inv + 0.5 * inv2 +
                  inv * inv2 * (1.0 / 6.0 +
                                inv2 * (-1.0 / 30.0 +
                                        inv2 * (1.0 / 42.0 +
                                                inv2 * (-1.0 / 30.0 +
                                                        inv2 * (5.0 / 66.0)))));
  return acc + series;
}

}  // namespace ddopt
