#include "ddopt/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ddopt/errors.hpp"

namespace ddopt {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

NoiseSpec NoiseSpec::parametric(double S0, double A, double nu_L_mhz, double sigma_nu_mhz,
                                double omega_max_rad_us) {
  NoiseSpec n;
  n.kind = Kind::parametric;
  n.S0 = S0;
  n.A = A;
  n.nu_L = nu_L_mhz;
  n.sigma_nu = sigma_nu_mhz;
  // default cutoff: peak + 10 sigma (Gaussian tail below 1e-20 of the peak there)
  n.omega_max = omega_max_rad_us > 0.0
                    ? omega_max_rad_us
                    : kTwoPi * nu_L_mhz + 10.0 * kTwoPi * sigma_nu_mhz;
  n.validate();
  return n;
}

NoiseSpec NoiseSpec::tabulated(std::vector<double> omega, std::vector<double> S) {
  NoiseSpec n;
  n.kind = Kind::tabulated;
  n.omega_tab = std::move(omega);
  n.S_tab = std::move(S);
  if (n.omega_tab.empty()) throw ConfigError("noise: empty table");
  n.omega_max = n.omega_tab.back();
  n.validate();
  return n;
}

double NoiseSpec::omega_peak() const { return kTwoPi * nu_L; }
double NoiseSpec::sigma_omega() const { return kTwoPi * sigma_nu; }

NoiseSpec NoiseSpec::folded_from_two_sided() const {
  NoiseSpec n = *this;
  n.S0 *= 2.0;
  n.A *= 2.0;
  for (auto& s : n.S_tab) s *= 2.0;
  return n;
}

void NoiseSpec::validate() const {
  if (kind == Kind::parametric) {
    if (S0 < 0.0 || A < 0.0) throw ConfigError("noise: S0 and A must be >= 0");
    if (sigma_nu <= 0.0 && A > 0.0) throw ConfigError("noise: sigma must be > 0");
    if (A > 0.0 && !(omega_max > omega_peak() + 8.0 * sigma_omega())) {
      throw ConfigError("noise: omega_max must exceed omega_L + 8 sigma");
    }
  } else {
    if (omega_tab.size() != S_tab.size() || omega_tab.size() < 2) {
      throw ConfigError("noise: table needs >= 2 (omega, S) rows of equal length");
    }
    for (std::size_t i = 0; i < omega_tab.size(); ++i) {
      if (i > 0 && !(omega_tab[i] > omega_tab[i - 1])) {
        throw ConfigError("noise: table omegas must be strictly increasing");
      }
      if (omega_tab[i] < 0.0) throw ConfigError("noise: table omegas must be >= 0");
      if (S_tab[i] < 0.0) throw ConfigError("noise: S must be >= 0 everywhere");
    }
  }
}

double NoiseSpec::value(double omega) const {
  if (omega < 0.0) throw DegenerateInputError("noise: omega must be >= 0");
  if (omega > omega_max) return 0.0;
  if (kind == Kind::parametric) {
    double s = S0;
    if (A > 0.0) {
      const double d = (omega - omega_peak()) / sigma_omega();
      s += A * std::exp(-0.5 * d * d);
    }
    return s;
  }
  // tabulated: linear interpolation, zero outside the table
  if (omega < omega_tab.front()) return 0.0;
  auto it = std::upper_bound(omega_tab.begin(), omega_tab.end(), omega);
  if (it == omega_tab.begin()) return 0.0;
  std::size_t j = static_cast<std::size_t>(it - omega_tab.begin());
  if (j >= omega_tab.size()) return S_tab.back();
  const double w0 = omega_tab[j - 1], w1 = omega_tab[j];
  const double f = (omega - w0) / (w1 - w0);
  return S_tab[j - 1] + f * (S_tab[j] - S_tab[j - 1]);
}

double evaluate_nsd(const NoiseSpec& spec, double omega) { return spec.value(omega); }

std::vector<double> NoiseSpec::breakpoints() const {
  std::vector<double> pts{0.0};
  if (kind == Kind::parametric) {
    if (A > 0.0) {
      const double wl = omega_peak(), s = sigma_omega();
      for (double m : {-10.0, -5.0, -3.0, -1.0, 0.0, 1.0, 3.0, 5.0, 10.0}) {
        const double w = wl + m * s;
        if (w > 0.0 && w < omega_max) pts.push_back(w);
      }
    }
  } else {
    for (double w : omega_tab) {
      if (w > 0.0 && w < omega_max) pts.push_back(w);
    }
  }
  pts.push_back(omega_max);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace ddopt
