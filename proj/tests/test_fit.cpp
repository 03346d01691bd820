#include <doctest.h>

#include <cmath>

#include "ddopt/errors.hpp"
#include "ddopt/fit.hpp"
#include "ddopt/metrics.hpp"
#include "ddopt/rng.hpp"
#include "test_util.hpp"

using namespace ddopt;

namespace {

std::vector<PopulationSample> synthetic_curve(double chi, double rate, double b_max,
                                              int n, double sigma,
                                              std::mt19937_64* noise_rng = nullptr) {
  std::vector<PopulationSample> out;
  for (int i = 0; i < n; ++i) {
    const double b = b_max * static_cast<double>(i) / (n - 1);
    double P = population(chi, rate * b);
    if (noise_rng) P += sigma * gaussian(*noise_rng);
    out.push_back({b, P, sigma});
  }
  return out;
}

}  // namespace

TEST_CASE("fit recovers noiseless parameters to 1e-6") {
  const double chi = 0.6, rate = 4.2, T = 30.0;
  const auto data = synthetic_curve(chi, rate, 1.5, 41, 0.01);
  const FitResult fit = fit_population_curve(data, T);
  CHECK(std::abs(fit.chi - chi) < 1e-6);
  CHECK(std::abs(fit.phi_over_b - rate) < 1e-6);
  CHECK(fit.eta == doctest::Approx(std::exp(chi) * std::sqrt(T) / rate).epsilon(1e-6));
}

TEST_CASE("fit on a full-amplitude cosine returns chi = 0") {
  const auto data = synthetic_curve(0.0, 2.0, 2.0, 25, 0.02);
  const FitResult fit = fit_population_curve(data, 10.0);
  CHECK(std::abs(fit.chi) < 1e-8);
  CHECK(std::abs(fit.phi_over_b - 2.0) < 1e-8);
}

TEST_CASE("fit works when the scan starts away from b = 0") {
  std::vector<PopulationSample> data;
  const double chi = 0.25, rate = 3.0;
  for (int i = 0; i < 30; ++i) {
    const double b = 0.4 + 1.8 * i / 29.0;
    data.push_back({b, population(chi, rate * b), 0.01});
  }
  const FitResult fit = fit_population_curve(data, 20.0);
  CHECK(std::abs(fit.chi - chi) < 1e-6);
  CHECK(std::abs(fit.phi_over_b - rate) < 1e-6);
}

TEST_CASE("fit input validation") {
  std::vector<PopulationSample> few = {{0.0, 0.5, 0.01}, {0.1, 0.6, 0.01}};
  CHECK_THROWS_AS(fit_population_curve(few, 10.0), ConfigError);

  std::vector<PopulationSample> same(6, {0.3, 0.6, 0.01});
  CHECK_THROWS_AS(fit_population_curve(same, 10.0), DegenerateInputError);

  auto bad_sigma = synthetic_curve(0.2, 2.0, 1.0, 8, 0.01);
  bad_sigma[3].sigma_P = 0.0;
  CHECK_THROWS_AS(fit_population_curve(bad_sigma, 10.0), ConfigError);
}

TEST_CASE("fit coverage under Gaussian noise (quick calibration run)") {
  std::mt19937_64 rng(20240817);
  const double chi = 0.45, rate = 5.0, T = 25.0;
  int covered = 0;
  const int trials = 40;
  for (int t = 0; t < trials; ++t) {
    const auto data = synthetic_curve(chi, rate, 1.6, 41, 0.01, &rng);
    const FitResult fit = fit_population_curve(data, T);
    const bool ok_chi = std::abs(fit.chi - chi) <= 3.0 * fit.se_chi;
    const bool ok_rate = std::abs(fit.phi_over_b - rate) <= 3.0 * fit.se_phi_over_b;
    if (ok_chi && ok_rate) ++covered;
  }
  CHECK(covered >= trials - 1);
}
