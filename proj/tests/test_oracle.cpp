#include <doctest.h>

#include <cmath>

#include "ddopt/anneal.hpp"
#include "ddopt/errors.hpp"
#include "ddopt/oracle.hpp"
#include "test_util.hpp"

using namespace ddopt;
using namespace ddopt::testing;

TEST_CASE("naive_energy trivial values and flip invariance") {
  const Grid g = Grid::make(4.0, 0.5);
  SpinSequence up;
  up.grid = g;
  up.s.assign(static_cast<std::size_t>(g.N), 1);
  std::vector<double> h = {0.1, 0.2, -0.05, 0.3, 0.0, 0.1, 0.05, 0.1};
  double sum = 0.0;
  for (double v : h) sum += v;
  CHECK(naive_energy(up, h, CouplingMatrix::zero(g.N), 0.0) ==
        doctest::Approx(-std::log(std::abs(sum))).epsilon(1e-13));

  std::mt19937_64 rng(107);
  const CouplingMatrix J = random_coupling(g.N, rng);
  SpinSequence s = random_sequence(g, rng);
  const double e0 = naive_energy(s, h, J, 0.4);
  for (auto& v : s.s) v = static_cast<std::int8_t>(-v);
  CHECK(naive_energy(s, h, J, 0.4) == doctest::Approx(e0).epsilon(1e-13));
}

TEST_CASE("naive_energy and the incremental engine agree on 1000 instances") {
  std::mt19937_64 rng(109);
  const Grid g = Grid::make(4.0, 0.5);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto h = random_field(g.N, rng);
    const CouplingMatrix J = random_coupling(g.N, rng);
    const double K = uniform(rng, 0.0, 0.5);
    const SpinSequence s = random_sequence(g, rng);
    IsingState st(s, h, J, K);
    REQUIRE(std::abs(st.energy() - naive_energy(s, h, J, K)) < 1e-12);
  }
}

TEST_CASE("brute force: J = 0 optimum is sign(h)") {
  std::mt19937_64 rng(113);
  const Grid g = Grid::make(5.0, 0.5);
  const auto h = random_field(g.N, rng);
  const BruteForceResult bf = brute_force_min(h, CouplingMatrix::zero(g.N), g);
  double l1 = 0.0;
  for (double v : h) l1 += std::abs(v);
  CHECK(bf.best_epsilon == doctest::Approx(-std::log(l1)).epsilon(1e-12));
  const int flip = (h[0] < 0.0 ? -1 : 1) * static_cast<int>(bf.best.s[0]);
  for (int i = 0; i < g.N; ++i) {
    CHECK(static_cast<int>(bf.best.s[static_cast<std::size_t>(i)]) * flip ==
          (h[static_cast<std::size_t>(i)] < 0.0 ? -1 : 1));
  }
}

TEST_CASE("brute force: two-spin instance by hand") {
  const Grid g = Grid::make(1.0, 0.5);
  const double a = 0.05, b = 0.02;
  CouplingMatrix J;
  J.first_row = {a, b};
  const std::vector<double> h = {0.6, 0.25};
  // states (+,+) and (+,-): epsilon = a + b - log(0.85) vs a - b - log(0.35)
  const double e_pp = a + b - std::log(0.85);
  const double e_pm = a - b - std::log(0.35);
  const BruteForceResult bf = brute_force_min(h, J, g);
  CHECK(bf.best_epsilon == doctest::Approx(std::min(e_pp, e_pm)).epsilon(1e-13));
  CHECK(bf.evaluated_count == 2);
}

TEST_CASE("brute force: representative count and the N cap") {
  std::mt19937_64 rng(127);
  const Grid g = Grid::make(7.0, 0.5);  // N = 14
  const auto h = random_field(g.N, rng);
  const CouplingMatrix J = random_coupling(g.N, rng);
  const BruteForceResult bf = brute_force_min(h, J, g);
  CHECK(bf.evaluated_count == (1ull << 13));
  CHECK(static_cast<int>(bf.best.s[0]) == 1);  // canonical representative

  Grid big;
  big.T = 21.0;
  big.dt = 1.0;
  big.N = 21;
  CHECK_THROWS_AS(brute_force_min(std::vector<double>(21, 0.1), CouplingMatrix::zero(21), big),
                  ConfigError);
}
