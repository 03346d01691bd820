#ifndef DDOPT_NOISE_HPP
#define DDOPT_NOISE_HPP

#include <vector>

namespace ddopt {

// One-sided noise spectral density S(omega), omega in rad/us, S in MHz.
// Either parametric  S(w) = S0 + A exp(-(w - w_L)^2 / (2 sigma^2))  or a
// tabulated spectrum with linear interpolation. S is zero beyond omega_max.
struct NoiseSpec {
  enum class Kind { parametric, tabulated };

  Kind kind = Kind::parametric;

  // parametric parameters (S0, A in MHz; nu_L, sigma_nu linear-frequency MHz)
  double S0 = 0.0;
  double A = 0.0;
  double nu_L = 0.0;
  double sigma_nu = 0.0;

  // tabulated spectrum: ascending omega [rad/us], S [MHz]
  std::vector<double> omega_tab;
  std::vector<double> S_tab;

  double omega_max = 0.0;  // integration cutoff [rad/us]

  static NoiseSpec parametric(double S0, double A, double nu_L_mhz, double sigma_nu_mhz,
                              double omega_max_rad_us = -1.0);
  static NoiseSpec tabulated(std::vector<double> omega, std::vector<double> S);
  static NoiseSpec none() { return parametric(0.0, 0.0, 0.0, 1e-3); }

  // All integrals here use the one-sided convention chi = (1/pi) int_0^inf S |Y|^2/w^2.
  // Data quoted as a two-sided density can be folded onto it (S -> 2 S).
  NoiseSpec folded_from_two_sided() const;

  double omega_peak() const;   // 2*pi*nu_L [rad/us]
  double sigma_omega() const;  // 2*pi*sigma_nu [rad/us]

  void validate() const;
  double value(double omega) const;  // S(omega); omega >= 0

  // points where the quadrature should break: peak window edges, table nodes.
  std::vector<double> breakpoints() const;
};

double evaluate_nsd(const NoiseSpec& spec, double omega);

}  // namespace ddopt

#endif
