#ifndef DDOPT_METRICS_HPP
#define DDOPT_METRICS_HPP

#include <limits>
#include <vector>

#include "ddopt/coupling.hpp"
#include "ddopt/noise.hpp"
#include "ddopt/sequences.hpp"

namespace ddopt {

// m = sum_i h_i s_i, the (dimensionless) overlap between sequence and field.
double field_overlap(const SpinSequence& seq, const std::vector<double>& h);

// phi(T, b) = T * gamma * b * sum_i h_i s_i   [rad]
double phase(const SpinSequence& seq, const std::vector<double>& h, double gamma,
             double b);

// chi = 1/2 s^T J s (Toeplitz form, O(N^2))
double decoherence(const SpinSequence& seq, const CouplingMatrix& J);

// chi = (1/pi) * integral dw S(w) |Y(T,w)|^2 / w^2 with the analytic filter
// function of the piecewise-constant modulation; cross-validates decoherence().
double chi_continuous(const SpinSequence& seq, const NoiseSpec& noise,
                      double rel_tol = 1e-6);

// |Y(T,omega)|^2 in closed form; |Y|^2/omega^2 version is stable through omega = 0.
double filter_function(const SpinSequence& seq, double omega);
double filter_function_over_w2(const SpinSequence& seq, double omega);

// (1/pi) * integral_0^inf |Y|^2/w^2 dw. Equals T exactly for any +/-1 sequence;
// evaluated by folding the periodic |Y|^2 onto one period with a trigamma weight.
double parseval_integral(const SpinSequence& seq, double rel_tol = 1e-9);

// epsilon = 1/2 s^T J s - log|sum_i h_i s_i|; +inf when the overlap vanishes.
double log_sensitivity(const SpinSequence& seq, const std::vector<double>& h,
                       const CouplingMatrix& J);

// eta = e^chi sqrt(T) / |phi/b|; +inf when the accumulated phase is zero.
double sensitivity(double chi, double phase_per_field, double T);

// P(T,b) = (1 + e^-chi cos phi) / 2
double population(double chi, double phi);

// Fisher information for N_meas trials; slope_detection uses the linear-response
// form N 8 phi^2 e^{-2 chi} / b^2.
double fisher_information(double phi, double chi, double b, long n_meas,
                          bool slope_detection);

struct Metrics {
  double T = 0.0;
  double dt = 0.0;
  int pulse_count = 0;
  double overlap = 0.0;          // sum h_i s_i
  double phase_per_field = 0.0;  // phi/b = T gamma m  [rad / field unit]
  double chi = 0.0;
  double epsilon = 0.0;
  double eta = 0.0;              // [field unit * sqrt(us)]
  double eta_sm_ratio = 0.0;     // eta_SM / eta, NaN when no bound was supplied
};

Metrics compute_metrics(const SpinSequence& seq, const std::vector<double>& h,
                        const CouplingMatrix& J, double gamma,
                        double eta_sm = std::numeric_limits<double>::quiet_NaN());

}  // namespace ddopt

#endif
