#include "ddopt/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ddopt/errors.hpp"
#include "ddopt/quadrature.hpp"
#include "ddopt/special.hpp"

namespace ddopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_lengths(const SpinSequence& seq, std::size_t n, const char* what) {
  if (seq.s.size() != n) {
    throw ConfigError(std::string(what) + ": size mismatch between sequence and operand");
  }
}

// |G(w)|^2 with G = sum_i s_i e^{-i w i dt} (cell-start phases)
double window_sum_sq(const SpinSequence& seq, double omega) {
  double re = 0.0, im = 0.0;
  const double dt = seq.grid.dt;
  for (int i = 0; i < seq.size(); ++i) {
    const double a = omega * i * dt;
    const double s = static_cast<double>(seq.s[static_cast<std::size_t>(i)]);
    re += s * std::cos(a);
    im -= s * std::sin(a);
  }
  return re * re + im * im;
}

}  // namespace

double field_overlap(const SpinSequence& seq, const std::vector<double>& h) {
  check_lengths(seq, h.size(), "overlap");
  double m = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    m += h[i] * static_cast<double>(seq.s[i]);
  }
  return m;
}

double phase(const SpinSequence& seq, const std::vector<double>& h, double gamma,
             double b) {
  return seq.grid.T * gamma * b * field_overlap(seq, h);
}

double decoherence(const SpinSequence& seq, const CouplingMatrix& J) {
  check_lengths(seq, static_cast<std::size_t>(J.size()), "decoherence");
  const int N = seq.size();
  const auto& r = J.first_row;
  double chi = 0.5 * r[0] * N;  // s_i^2 = 1 on the diagonal
  for (int k = 1; k < N; ++k) {
    double c = 0.0;
    for (int i = 0; i + k < N; ++i) {
      c += static_cast<double>(seq.s[static_cast<std::size_t>(i)]) *
           static_cast<double>(seq.s[static_cast<std::size_t>(i + k)]);
    }
    chi += r[static_cast<std::size_t>(k)] * c;
  }
  return chi;
}

double filter_function(const SpinSequence& seq, double omega) {
  if (omega < 0.0) throw DegenerateInputError("filter_function: omega must be >= 0");
  const double u = std::sin(0.5 * omega * seq.grid.dt);
  return 4.0 * u * u * window_sum_sq(seq, omega);
}

double filter_function_over_w2(const SpinSequence& seq, double omega) {
  if (omega < 0.0) throw DegenerateInputError("filter_function: omega must be >= 0");
  const double dt = seq.grid.dt;
  const double s = sinc(0.5 * omega * dt);
  return dt * dt * s * s * window_sum_sq(seq, omega);
}

double chi_continuous(const SpinSequence& seq, const NoiseSpec& noise, double rel_tol) {
  seq.validate();
  auto integrand = [&](double w) {
    return noise.value(w) * filter_function_over_w2(seq, w);
  };
  // panels no wider than the fastest oscillation scale pi/T of |Y|^2
  std::vector<double> pts = noise.breakpoints();
  const double span = noise.omega_max;
  const int n = static_cast<int>(std::ceil(span / (std::numbers::pi / seq.grid.T)));
  for (int i = 1; i < n; ++i) pts.push_back(span * i / n);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const QuadResult q = integrate_adaptive(integrand, pts, rel_tol, 0.0, 40000);
  if (!q.converged) {
    throw NumericalError("chi_continuous: quadrature did not reach tolerance");
  }
  return q.value / std::numbers::pi;
}

double parseval_integral(const SpinSequence& seq, double rel_tol) {
  seq.validate();
  const double dt = seq.grid.dt;
  const double period = 2.0 * std::numbers::pi / dt;
  // integral_0^inf |Y|^2/w^2 dw = integral_0^period |Y|^2(x) [1/x^2 + psi_1(x/P+1)/P^2] dx
  auto integrand = [&](double x) {
    const double gsq = window_sum_sq(seq, x);
    const double u = sinc(0.5 * x * dt);
    const double head = dt * dt * u * u * gsq;  // |Y|^2/x^2, stable at 0
    const double sn = std::sin(0.5 * x * dt);
    const double ysq = 4.0 * sn * sn * gsq;
    const double tail = ysq * trigamma(x / period + 1.0) / (period * period);
    return head + tail;
  };
  const int n_panels = 2 * seq.size() + 4;
  const QuadResult q =
      integrate_adaptive(integrand, uniform_breakpoints(0.0, period, n_panels), rel_tol,
                         0.0, 60000);
  if (!q.converged) {
    throw NumericalError("parseval_integral: quadrature did not reach tolerance");
  }
  return q.value / std::numbers::pi;
}

double log_sensitivity(const SpinSequence& seq, const std::vector<double>& h,
                       const CouplingMatrix& J) {
  const double m = field_overlap(seq, h);
  if (m == 0.0) return kInf;
  return decoherence(seq, J) - std::log(std::abs(m));
}

double sensitivity(double chi, double phase_per_field, double T) {
  if (phase_per_field == 0.0) return kInf;
  return std::exp(chi) * std::sqrt(T) / std::abs(phase_per_field);
}

double population(double chi, double phi) {
  return 0.5 * (1.0 + std::exp(-chi) * std::cos(phi));
}

double fisher_information(double phi, double chi, double b, long n_meas,
                          bool slope_detection) {
  if (b == 0.0) throw DegenerateInputError("fisher_information: b must be nonzero");
  const double base = 8.0 * phi * phi / (b * b) * std::exp(-2.0 * chi);
  if (slope_detection) return static_cast<double>(n_meas) * base;
  const double c = std::cos(phi), s = std::sin(phi);
  const double denom = 1.0 - std::exp(-2.0 * chi) * c * c;
  if (denom <= 0.0) return static_cast<double>(n_meas) * base;  // chi = 0, |cos| = 1 limit
  return static_cast<double>(n_meas) * base * s * s / denom;
}

Metrics compute_metrics(const SpinSequence& seq, const std::vector<double>& h,
                        const CouplingMatrix& J, double gamma, double eta_sm) {
  seq.validate();
  Metrics m;
  m.T = seq.grid.T;
  m.dt = seq.grid.dt;
  m.pulse_count = seq.pulse_count();
  m.overlap = field_overlap(seq, h);
  m.phase_per_field = m.T * gamma * m.overlap;
  m.chi = decoherence(seq, J);
  m.epsilon = (m.overlap == 0.0) ? kInf : m.chi - std::log(std::abs(m.overlap));
  m.eta = std::isinf(m.epsilon) ? kInf : std::exp(m.epsilon) / (gamma * std::sqrt(m.T));
  m.eta_sm_ratio = eta_sm / m.eta;  // NaN propagates when no bound was supplied
  return m;
}

}  // namespace ddopt
