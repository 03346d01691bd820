#ifndef DDOPT_SIGNAL_HPP
#define DDOPT_SIGNAL_HPP

#include <vector>

#include "ddopt/grid.hpp"

namespace ddopt {

// One cosine component of the target field: amplitude * cos(2*pi*freq*t + phase).
struct SignalComponent {
  double amplitude = 0.0;   // dimensionless
  double freq_mhz = 0.0;    // linear frequency [MHz]
  double phase_rad = 0.0;
};

// Multi-chromatic target field h(t) = sum_n A_n cos(2 pi nu_n t + phi_n).
// With `normalized` set, the amplitudes must sum to 1 (the ensemble convention).
struct SignalSpec {
  std::vector<SignalComponent> components;
  bool normalized = false;

  void validate() const;
  double value(double t_us) const;  // h(t); t >= 0
};

double evaluate_signal(const SignalSpec& spec, double t_us);

// Per-cell averages h_i = (1/T) * integral of h(t) over cell i, in closed form
// (difference of sines per component). sum_i h_i = (1/T) * integral_0^T h(t) dt exactly.
std::vector<double> build_field_vector(const SignalSpec& spec, const Grid& grid);

}  // namespace ddopt

#endif
