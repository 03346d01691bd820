#include "ddopt/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ddopt/errors.hpp"

namespace ddopt {

namespace {

struct Model {
  // residuals and Jacobian of (model - P)/sigma at (chi, r)
  static double value(double chi, double r, double b) {
    return 0.5 * (1.0 + std::exp(-chi) * std::cos(r * b));
  }
  static void jacobian(double chi, double r, double b, double& d_chi, double& d_r) {
    const double e = std::exp(-chi);
    d_chi = -0.5 * e * std::cos(r * b);
    d_r = -0.5 * e * b * std::sin(r * b);
  }
};

struct NormalEq {
  double a11 = 0, a12 = 0, a22 = 0;  // J^T J
  double g1 = 0, g2 = 0;             // J^T e
  double cost = 0;
};

NormalEq assemble(const std::vector<PopulationSample>& samples, double chi, double r) {
  NormalEq n;
  for (const auto& s : samples) {
    const double w = 1.0 / s.sigma_P;
    const double e = (Model::value(chi, r, s.b) - s.P) * w;
    double j1, j2;
    Model::jacobian(chi, r, s.b, j1, j2);
    j1 *= w;
    j2 *= w;
    n.a11 += j1 * j1;
    n.a12 += j1 * j2;
    n.a22 += j2 * j2;
    n.g1 += j1 * e;
    n.g2 += j2 * e;
    n.cost += e * e;
  }
  return n;
}

double cost_only(const std::vector<PopulationSample>& samples, double chi, double r) {
  double c = 0.0;
  for (const auto& s : samples) {
    const double e = (Model::value(chi, r, s.b) - s.P) / s.sigma_P;
    c += e * e;
  }
  return c;
}

// initial frequency from the spacing of zero crossings of 2P - 1
double initial_rate(const std::vector<PopulationSample>& sorted) {
  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const double g0 = 2.0 * sorted[i].P - 1.0;
    const double g1 = 2.0 * sorted[i + 1].P - 1.0;
    if (g0 == 0.0) {
      crossings.push_back(sorted[i].b);
    } else if (g0 * g1 < 0.0) {
      const double f = g0 / (g0 - g1);
      crossings.push_back(sorted[i].b + f * (sorted[i + 1].b - sorted[i].b));
    }
  }
  const double b_lo = sorted.front().b, b_hi = sorted.back().b;
  if (crossings.size() >= 2) {
    const double spacing = (crossings.back() - crossings.front()) /
                           static_cast<double>(crossings.size() - 1);
    if (spacing > 0.0) return std::numbers::pi / spacing;
  }
  if (crossings.size() == 1 && crossings[0] > b_lo) {
    return 0.5 * std::numbers::pi / (crossings[0] - b_lo + 1e-300);
  }
  return 0.5 * std::numbers::pi / std::max(b_hi - b_lo, 1e-300);
}

bool run_lm(const std::vector<PopulationSample>& samples, double& chi, double& r,
            int& iterations, int max_iter = 200) {
  double lambda = 1e-3;
  double cost = cost_only(samples, chi, r);
  for (int it = 0; it < max_iter; ++it) {
    ++iterations;
    NormalEq n = assemble(samples, chi, r);
    bool stepped = false;
    for (int attempt = 0; attempt < 30; ++attempt) {
      const double a11 = n.a11 * (1.0 + lambda);
      const double a22 = n.a22 * (1.0 + lambda);
      const double det = a11 * a22 - n.a12 * n.a12;
      if (det == 0.0 || !std::isfinite(det)) {
        lambda *= 10.0;
        continue;
      }
      const double d_chi = (-n.g1 * a22 + n.g2 * n.a12) / det;
      const double d_r = (-n.g2 * a11 + n.g1 * n.a12) / det;
      const double chi_t = chi + d_chi;
      const double r_t = r + d_r;
      const double cost_t = cost_only(samples, chi_t, r_t);
      if (std::isfinite(cost_t) && cost_t <= cost) {
        const double step = std::abs(d_chi) + std::abs(d_r);
        const double drop = cost - cost_t;
        chi = chi_t;
        r = r_t;
        cost = cost_t;
        lambda = std::max(lambda * 0.1, 1e-14);
        stepped = true;
        if (step < 1e-12 * (1.0 + std::abs(chi) + std::abs(r)) || drop < 1e-15 * (1.0 + cost)) {
          return true;
        }
        break;
      }
      lambda *= 10.0;
    }
    if (!stepped) return true;  // no downhill direction left: at a (local) optimum
  }
  return false;
}

}  // namespace

FitResult fit_population_curve(const std::vector<PopulationSample>& samples,
                               double T_us) {
  if (samples.size() < 5) {
    throw ConfigError("fit: need at least 5 samples");
  }
  for (const auto& s : samples) {
    if (!(s.sigma_P > 0.0)) throw ConfigError("fit: sigma_P must be > 0");
    if (s.P < -0.5 || s.P > 1.5) throw ConfigError("fit: P far outside [0,1]");
  }
  std::vector<PopulationSample> sorted = samples;
  std::sort(sorted.begin(), sorted.end(),
            [](const PopulationSample& a, const PopulationSample& b) { return a.b < b.b; });
  if (!(sorted.back().b > sorted.front().b)) {
    throw DegenerateInputError("fit: all field values are equal");
  }

  double amp = 0.0;
  for (const auto& s : sorted) amp = std::max(amp, std::abs(2.0 * s.P - 1.0));
  const double chi0 = -std::log(std::clamp(amp, 1e-6, 1.0));
  const double r0 = initial_rate(sorted);

  FitResult best;
  double best_cost = std::numeric_limits<double>::infinity();
  bool any = false;
  for (double scale : {1.0, 0.5, 2.0, 0.25, 4.0}) {
    double chi = chi0, r = r0 * scale;
    int iterations = 0;
    if (!run_lm(sorted, chi, r, iterations)) continue;
    const double cost = cost_only(sorted, chi, r);
    if (cost < best_cost) {
      best_cost = cost;
      best.chi = chi;
      best.phi_over_b = std::abs(r);  // model is even in the rate
      best.iterations = iterations;
      any = true;
    }
    if (best_cost <= 1e-20 * (1.0 + static_cast<double>(sorted.size()))) break;
  }
  if (!any) throw NumericalError("fit: did not converge within the iteration budget");

  // covariance from the weighted normal matrix at the optimum
  NormalEq n = assemble(sorted, best.chi, best.phi_over_b);
  const double det = n.a11 * n.a22 - n.a12 * n.a12;
  if (det <= 0.0 || !std::isfinite(det)) {
    throw NumericalError("fit: singular normal matrix at the optimum");
  }
  best.wrss = n.cost;
  best.se_chi = std::sqrt(n.a22 / det);
  best.se_phi_over_b = std::sqrt(n.a11 / det);
  best.cov = -n.a12 / det;

  const double r = best.phi_over_b;
  if (r > 0.0) {
    best.eta = std::exp(best.chi) * std::sqrt(T_us) / r;
    const double var = best.eta * best.eta *
                       (best.se_chi * best.se_chi +
                        best.se_phi_over_b * best.se_phi_over_b / (r * r) -
                        2.0 * best.cov / r);
    best.se_eta = var > 0.0 ? std::sqrt(var) : 0.0;
  } else {
    best.eta = std::numeric_limits<double>::infinity();
    best.se_eta = std::numeric_limits<double>::infinity();
  }
  return best;
}

}  // namespace ddopt
