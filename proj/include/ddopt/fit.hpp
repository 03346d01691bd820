#ifndef DDOPT_FIT_HPP
#define DDOPT_FIT_HPP

#include <vector>

namespace ddopt {

// One point of a measured population-vs-field curve.
struct PopulationSample {
  double b = 0.0;        // field amplitude [field units]
  double P = 0.0;        // excited-state population, in [0,1]
  double sigma_P = 0.0;  // standard error, > 0
};

struct FitResult {
  double chi = 0.0;
  double phi_over_b = 0.0;  // rad per field unit
  double se_chi = 0.0;
  double se_phi_over_b = 0.0;
  double cov = 0.0;  // covariance(chi, phi_over_b)
  double eta = 0.0;  // e^chi sqrt(T) / phi_over_b
  double se_eta = 0.0;
  double wrss = 0.0;  // weighted residual sum of squares
  int iterations = 0;
};

// Weighted Levenberg-Marquardt fit of P(b) = (1 + e^-chi cos((phi/b) b)) / 2.
// Initial guess comes from the sample extrema and the zero-crossing spacing.
// Needs >= 5 samples spanning at least half an oscillation.
FitResult fit_population_curve(const std::vector<PopulationSample>& samples,
                               double T_us);

}  // namespace ddopt

#endif
