#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "ddopt/metrics.hpp"
#include "ddopt/oracle.hpp"
#include "test_util.hpp"

using namespace ddopt;
using namespace ddopt::testing;
using std::numbers::pi;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

SpinSequence all_up(const Grid& g) {
  SpinSequence s;
  s.grid = g;
  s.s.assign(static_cast<std::size_t>(g.N), 1);
  return s;
}

CouplingMatrix white_noise_J(int n, double S0, double dt) {
  CouplingMatrix J = CouplingMatrix::zero(n);
  J.first_row[0] = 2.0 * S0 * dt;
  return J;
}
}  // namespace

TEST_CASE("phase: constant signal, no pulses") {
  const Grid g = Grid::make(10.0, 0.5);
  const SpinSequence s = all_up(g);
  std::vector<double> h(static_cast<std::size_t>(g.N), 1.0 / g.N);
  const double gamma = 0.17, b = 2.5;
  CHECK(phase(s, h, gamma, b) == doctest::Approx(g.T * gamma * b).epsilon(1e-13));
}

TEST_CASE("phase flips sign under a global spin flip") {
  std::mt19937_64 rng(3);
  const Grid g = Grid::make(10.0, 0.5);
  SpinSequence s = random_sequence(g, rng);
  const auto h = random_field(g.N, rng);
  const double p0 = phase(s, h, 0.2, 1.0);
  for (auto& v : s.s) v = static_cast<std::int8_t>(-v);
  CHECK(phase(s, h, 0.2, 1.0) == doctest::Approx(-p0).epsilon(1e-13));
}

TEST_CASE("phase of the gCP sequence matches per-bin quadrature of h(t) sign(h)") {
  const SignalSpec tri = trichromatic_signal();
  const Grid g = Grid::make(32.0, 0.16);
  const auto h = build_field_vector(tri, g);
  const auto seq = gcp_sequence(tri, g);
  const double gamma = 0.17592918860102841, b = 0.8;
  double integral = 0.0;  // integral of h(t) y(t) dt with y the gCP modulation
  for (int i = 0; i < g.N; ++i) {
    integral += static_cast<double>(seq.s[static_cast<std::size_t>(i)]) *
                adaptive_simpson([&](double t) { return tri.value(t); }, g.cell_start(i),
                                 g.cell_end(i), 1e-14);
  }
  CHECK(phase(seq, h, gamma, b) == doctest::Approx(gamma * b * integral).epsilon(1e-10));
}

TEST_CASE("decoherence: zero noise, white noise, flip invariance") {
  std::mt19937_64 rng(5);
  const Grid g = Grid::make(10.0, 0.5);
  SpinSequence s = random_sequence(g, rng);

  CHECK(decoherence(s, CouplingMatrix::zero(g.N)) == 0.0);

  const double S0 = 0.3;
  CHECK(decoherence(s, white_noise_J(g.N, S0, g.dt)) ==
        doctest::Approx(g.N * S0 * g.dt).epsilon(1e-13));

  const CouplingMatrix J = random_coupling(g.N, rng);
  const double chi0 = decoherence(s, J);
  for (auto& v : s.s) v = static_cast<std::int8_t>(-v);
  CHECK(decoherence(s, J) == doctest::Approx(chi0).epsilon(1e-13));
}

TEST_CASE("chi_continuous agrees with the Toeplitz quadratic form") {
  std::mt19937_64 rng(9);
  const Grid g = Grid::make(16.0, 0.16);
  const NoiseSpec nv = nv_noise();
  const CouplingMatrix J = build_coupling_matrix(nv, g);
  for (int trial = 0; trial < 5; ++trial) {
    const SpinSequence s = random_sequence(g, rng);
    const double chi_t = decoherence(s, J);
    const double chi_c = chi_continuous(s, nv);
    REQUIRE(std::abs(chi_c - chi_t) / chi_t < 1e-3);
  }
}

TEST_CASE("chi_continuous: zero spectrum and single-spin white noise") {
  const Grid g = Grid::make(4.0, 0.5);
  const SpinSequence s = all_up(g);
  CHECK(chi_continuous(s, NoiseSpec::none()) == 0.0);

  // single cell: chi = S0 * dt (half of first_row[0])
  Grid g1;
  g1.T = 0.5;
  g1.dt = 0.5;
  g1.N = 1;
  SpinSequence one;
  one.grid = g1;
  one.s = {1};
  const double S0 = 0.4;
  const NoiseSpec white = NoiseSpec::parametric(S0, 0.0, 0.0, 1e-3, 8000.0);
  const double chi_c = chi_continuous(one, white);
  const CouplingMatrix J1 = build_coupling_matrix(white, g1);
  CHECK(chi_c == doctest::Approx(0.5 * J1.first_row[0]).epsilon(1e-6));
  CHECK(chi_c == doctest::Approx(S0 * g1.dt).epsilon(1e-3));
}

TEST_CASE("filter function: zero-frequency limit and single interval") {
  const Grid g = Grid::make(10.0, 0.5);
  const SpinSequence s = all_up(g);
  CHECK(filter_function(s, 0.0) == 0.0);
  for (double w : {0.3, 1.1, 2.7}) {
    CHECK(filter_function(s, w) ==
          doctest::Approx(2.0 * (1.0 - std::cos(w * g.T))).epsilon(1e-9));
  }
  // |Y|^2/w^2 approaches dt^2 (sum s)^2 = T^2 as w -> 0
  CHECK(filter_function_over_w2(s, 1e-9) == doctest::Approx(g.T * g.T).epsilon(1e-9));
}

TEST_CASE("CP filter: global maximum of |Y|^2/w^2 near pi/tau with odd harmonics") {
  const double tau = 2.0;
  const int n = 16;
  const Grid g = Grid::make(n * tau, 0.1);
  const auto seq = cp_sequence(n, tau, g);

  const double w1 = pi / tau;
  const double step = 1e-3;
  double best_w = 0.0, best_v = -1.0;
  for (double w = step; w < 3.2 * w1; w += step) {
    const double v = filter_function_over_w2(seq, w);
    if (v > best_v) {
      best_v = v;
      best_w = w;
    }
  }
  CHECK(std::abs(best_w - w1) <= 2.0 * pi / g.T + step);

  // local maxima at odd multiples (2l+1) pi/tau for l = 1, 2
  for (int l = 1; l <= 2; ++l) {
    const double center = (2 * l + 1) * w1;
    double loc_w = 0.0, loc_v = -1.0;
    for (double w = center - 0.5; w <= center + 0.5; w += step) {
      const double v = filter_function_over_w2(seq, w);
      if (v > loc_v) {
        loc_v = v;
        loc_w = w;
      }
    }
    CHECK(std::abs(loc_w - center) <= 2.0 * pi / g.T + step);
  }
}

TEST_CASE("Parseval normalization: (1/pi) integral |Y|^2/w^2 = T") {
  std::mt19937_64 rng(13);
  const Grid g = Grid::make(12.8, 0.16);
  for (int trial = 0; trial < 5; ++trial) {
    const SpinSequence s = random_sequence(g, rng);
    REQUIRE(parseval_integral(s) == doctest::Approx(g.T).epsilon(1e-3));
  }
  CHECK(parseval_integral(all_up(g)) == doctest::Approx(g.T).epsilon(1e-6));
}

TEST_CASE("log_sensitivity: singular overlap, noiseless optimum, brute recompute") {
  const Grid g = Grid::make(6.0, 0.5);  // N = 12
  std::mt19937_64 rng(17);

  SpinSequence s = all_up(g);
  std::vector<double> h(static_cast<std::size_t>(g.N), 0.25);
  for (int i = 0; i < 6; ++i) s.s[static_cast<std::size_t>(i)] = -1;
  CHECK(log_sensitivity(s, h, CouplingMatrix::zero(g.N)) == kInf);

  const auto hr = random_field(g.N, rng);
  SpinSequence opt = all_up(g);
  double l1 = 0.0;
  for (int i = 0; i < g.N; ++i) {
    opt.s[static_cast<std::size_t>(i)] = hr[static_cast<std::size_t>(i)] < 0.0 ? -1 : 1;
    l1 += std::abs(hr[static_cast<std::size_t>(i)]);
  }
  CHECK(log_sensitivity(opt, hr, CouplingMatrix::zero(g.N)) ==
        doctest::Approx(-std::log(l1)).epsilon(1e-12));

  const CouplingMatrix J = random_coupling(g.N, rng);
  for (int trial = 0; trial < 20; ++trial) {
    const SpinSequence sr = random_sequence(g, rng);
    REQUIRE(log_sensitivity(sr, hr, J) ==
            doctest::Approx(naive_energy(sr, hr, J, 0.0)).epsilon(1e-12));
  }
}

TEST_CASE("sensitivity and population basics") {
  const double T = 25.0, gamma = 0.17;
  CHECK(sensitivity(0.0, T * gamma, T) == doctest::Approx(1.0 / (gamma * std::sqrt(T))));
  CHECK(sensitivity(0.0, 0.0, T) == kInf);
  CHECK(population(0.7, 0.0) == doctest::Approx(0.5 * (1.0 + std::exp(-0.7))));
  CHECK(population(1e9, 1.23) == doctest::Approx(0.5));
  CHECK(population(0.0, pi) == doctest::Approx(0.0));
}

TEST_CASE("metrics identities: epsilon and eta are mutually consistent") {
  std::mt19937_64 rng(23);
  const Grid g = Grid::make(12.0, 0.5);
  const auto h = random_field(g.N, rng);
  const CouplingMatrix J = random_coupling(g.N, rng);
  const double gamma = 0.17592918860102841;
  for (int trial = 0; trial < 25; ++trial) {
    const SpinSequence s = random_sequence(g, rng);
    const Metrics m = compute_metrics(s, h, J, gamma);
    if (std::isinf(m.epsilon)) continue;
    // epsilon = chi - log|phi/(T gamma b)| and eta = e^epsilon/(gamma sqrt(T))
    CHECK(std::abs(m.epsilon - (m.chi - std::log(std::abs(m.phase_per_field / (g.T * gamma))))) < 1e-12);
    CHECK(std::abs(m.eta - std::exp(m.epsilon) / (gamma * std::sqrt(g.T))) <=
          1e-12 * m.eta);
    CHECK(std::abs(m.eta - sensitivity(m.chi, m.phase_per_field, g.T)) <= 1e-12 * m.eta);
    CHECK(std::abs(m.epsilon - std::log(m.eta * gamma * std::sqrt(g.T))) < 1e-12);
  }
}

TEST_CASE("global flip invariance of chi, epsilon, eta") {
  std::mt19937_64 rng(29);
  const Grid g = Grid::make(12.0, 0.5);
  const auto h = random_field(g.N, rng);
  const CouplingMatrix J = random_coupling(g.N, rng);
  SpinSequence s = random_sequence(g, rng);
  const Metrics m0 = compute_metrics(s, h, J, 0.2);
  for (auto& v : s.s) v = static_cast<std::int8_t>(-v);
  const Metrics m1 = compute_metrics(s, h, J, 0.2);
  CHECK(m1.chi == doctest::Approx(m0.chi).epsilon(1e-13));
  CHECK(m1.epsilon == doctest::Approx(m0.epsilon).epsilon(1e-13));
  CHECK(m1.eta == doctest::Approx(m0.eta).epsilon(1e-13));
  CHECK(m1.phase_per_field == doctest::Approx(-m0.phase_per_field).epsilon(1e-13));
}

TEST_CASE("fisher information: limits and Cramer-Rao consistency") {
  CHECK(fisher_information(0.8, 1e9, 0.5, 1, false) == doctest::Approx(0.0));
  CHECK(fisher_information(0.8, 0.0, 0.5, 1, true) ==
        doctest::Approx(8.0 * 0.64 / 0.25));
  CHECK_THROWS(fisher_information(0.5, 0.1, 0.0, 1, true));

  // slope detection with N = 1/T experiments per second reproduces eta up to
  // the C = 1 convention: 1/sqrt(F_N) = eta / sqrt(8)
  const double T = 30.0, gamma = 0.17, b = 0.35, chi = 0.42;
  const double phase_per_field = T * gamma * 0.6;
  const double phi = phase_per_field * b;
  const double eta = sensitivity(chi, phase_per_field, T);
  const double F_per_meas = fisher_information(phi, chi, b, 1, true);
  const double F_N = F_per_meas / T;  // N = 1/T measurements in one second
  CHECK(eta == doctest::Approx(std::sqrt(8.0 / F_N)).epsilon(1e-12));
}
