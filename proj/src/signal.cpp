#include "ddopt/signal.hpp"

#include <cmath>
#include <numbers>

#include "ddopt/errors.hpp"

namespace ddopt {

void SignalSpec::validate() const {
  if (components.empty()) throw ConfigError("signal: needs at least one component");
  double sum = 0.0;
  for (const auto& c : components) {
    if (!(c.amplitude >= 0.0)) throw ConfigError("signal: amplitudes must be >= 0");
    if (!(c.freq_mhz >= 0.0)) throw ConfigError("signal: frequencies must be >= 0");
    if (!std::isfinite(c.phase_rad)) throw ConfigError("signal: phase must be finite");
    sum += c.amplitude;
  }
  if (normalized && std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("signal: normalized flag set but amplitudes sum to " +
                      std::to_string(sum));
  }
}

double SignalSpec::value(double t_us) const {
  if (t_us < 0.0) throw DegenerateInputError("signal: t must be >= 0");
  double h = 0.0;
  for (const auto& c : components) {
    h += c.amplitude * std::cos(2.0 * std::numbers::pi * c.freq_mhz * t_us + c.phase_rad);
  }
  return h;
}

double evaluate_signal(const SignalSpec& spec, double t_us) { return spec.value(t_us); }

std::vector<double> build_field_vector(const SignalSpec& spec, const Grid& grid) {
  spec.validate();
  std::vector<double> h(static_cast<std::size_t>(grid.N), 0.0);
  for (const auto& c : spec.components) {
    const double w = 2.0 * std::numbers::pi * c.freq_mhz;  // rad/us
    if (w == 0.0) {
      const double v = c.amplitude * std::cos(c.phase_rad) * grid.dt / grid.T;
      for (int i = 0; i < grid.N; ++i) h[i] += v;
      continue;
    }
    // integral of A cos(w t + phi) over [a,b] = A (sin(w b + phi) - sin(w a + phi)) / w
    double sin_prev = std::sin(c.phase_rad);
    for (int i = 0; i < grid.N; ++i) {
      const double sin_next = std::sin(w * grid.cell_end(i) + c.phase_rad);
      h[i] += c.amplitude * (sin_next - sin_prev) / (w * grid.T);
      sin_prev = sin_next;
    }
  }
  return h;
}

}  // namespace ddopt
