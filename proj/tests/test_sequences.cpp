#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "ddopt/errors.hpp"
#include "ddopt/metrics.hpp"
#include "ddopt/sequences.hpp"
#include "test_util.hpp"

using namespace ddopt;
using namespace ddopt::testing;
using std::numbers::pi;

TEST_CASE("cp_sequence: Hahn echo limit") {
  const Grid g = Grid::make(10.0, 0.5);
  const auto seq = cp_sequence(1, 10.0, g);
  CHECK(seq.pulse_count() == 1);
  const auto p = extract_pulses(seq);
  REQUIRE(p.times_us.size() == 1);
  CHECK(p.times_us[0] == doctest::Approx(5.0));
}

TEST_CASE("cp_sequence: snapping stays within dt/2 and count is exact") {
  const Grid g = Grid::make(37.6, 0.16);  // 16 * 2.35
  const double tau = 37.6 / 16.0;
  const auto seq = cp_sequence(16, tau, g);
  CHECK(seq.pulse_count() == 16);
  const auto p = extract_pulses(seq);
  REQUIRE(p.times_us.size() == 16);
  for (int k = 0; k < 16; ++k) {
    const double ideal = (k + 0.5) * tau;
    CHECK(std::abs(p.times_us[static_cast<std::size_t>(k)] - ideal) <= 0.5 * g.dt + 1e-12);
  }
  // spacing uniform within one grid step
  for (int k = 0; k + 1 < 16; ++k) {
    const double gap = p.times_us[static_cast<std::size_t>(k + 1)] -
                       p.times_us[static_cast<std::size_t>(k)];
    CHECK(std::abs(gap - tau) <= g.dt + 1e-12);
  }
}

TEST_CASE("cp_sequence: unrepresentable tau names a compatible dt") {
  const Grid g = Grid::make(4.0, 0.5);
  CHECK_THROWS_AS(cp_sequence(16, 0.25, g), ConfigError);  // pulses collide
  try {
    cp_sequence(16, 0.25, g);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("dt") != std::string::npos);
  }
  CHECK_THROWS_AS(cp_sequence(3, 0.5, g), ConfigError);  // n*tau != T
}

TEST_CASE("gcp_sequence: positive signal has no pulses") {
  SignalSpec flat{{{1.0, 0.0, 0.0}}, true};
  const Grid g = Grid::make(8.0, 0.5);
  const auto seq = gcp_sequence(flat, g);
  CHECK(seq.pulse_count() == 0);
  for (auto v : seq.s) CHECK(v == 1);
}

TEST_CASE("gcp_sequence on a cosine equals CP at tau = 1/(2 nu)") {
  const double nu = 0.25;  // zeros at 1, 3, 5, ... us
  SignalSpec mono{{{1.0, nu, 0.0}}, true};
  const Grid g = Grid::make(8.0, 0.1);
  const auto gcp = gcp_sequence(mono, g);
  const auto p = extract_pulses(gcp);
  REQUIRE(p.times_us.size() == 4);
  for (std::size_t k = 0; k < p.times_us.size(); ++k) {
    const double zero = (2.0 * static_cast<double>(k) + 1.0) / (4.0 * nu);
    CHECK(std::abs(p.times_us[k] - zero) <= 0.5 * g.dt + 1e-12);
  }
}

TEST_CASE("gcp pulses sit at the sign changes of the trichromatic signal") {
  const SignalSpec tri = trichromatic_signal();
  const Grid g = Grid::make(32.0, 0.16);
  const auto seq = gcp_sequence(tri, g);
  const auto pulses = extract_pulses(seq).times_us;

  // oracle: bisection for the roots of h(t) between midpoints of opposite sign
  std::vector<double> roots;
  for (int i = 0; i + 1 < g.N; ++i) {
    double a = g.cell_mid(i), b = g.cell_mid(i + 1);
    double fa = tri.value(a), fb = tri.value(b);
    if (fa == 0.0 || fa * fb >= 0.0) continue;
    for (int it = 0; it < 60; ++it) {
      const double m = 0.5 * (a + b);
      const double fm = tri.value(m);
      if (fa * fm <= 0.0) {
        b = m;
        fb = fm;
      } else {
        a = m;
        fa = fm;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  REQUIRE(pulses.size() == roots.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    CHECK(std::abs(pulses[k] - roots[k]) <= g.dt);  // snapped to the wall grid
  }
}

TEST_CASE("extract/embed: trivial cases") {
  const Grid g = Grid::make(8.0, 0.5);
  SpinSequence flat;
  flat.grid = g;
  flat.s.assign(16, 1);
  CHECK(extract_pulses(flat).times_us.empty());

  SpinSequence half;
  half.grid = g;
  half.s.assign(16, 1);
  for (int i = 8; i < 16; ++i) half.s[static_cast<std::size_t>(i)] = -1;
  const auto p = extract_pulses(half);
  REQUIRE(p.times_us.size() == 1);
  CHECK(p.times_us[0] == doctest::Approx(4.0));
}

TEST_CASE("extract/embed round trip modulo global sign (1000 random sequences)") {
  std::mt19937_64 rng(7);
  const Grid g = Grid::make(8.0, 0.25);
  for (int trial = 0; trial < 1000; ++trial) {
    const SpinSequence s0 = random_sequence(g, rng);
    const SpinSequence s1 = embed_pulses(extract_pulses(s0), g);
    const int flip = s0.s[0] == s1.s[0] ? 1 : -1;
    for (int i = 0; i < g.N; ++i) {
      REQUIRE(static_cast<int>(s0.s[static_cast<std::size_t>(i)]) ==
              flip * static_cast<int>(s1.s[static_cast<std::size_t>(i)]));
    }
  }
}

TEST_CASE("embed rejects off-grid and disordered pulse times") {
  const Grid g = Grid::make(8.0, 0.5);
  PulseSequence p;
  p.T_us = 8.0;
  p.times_us = {1.23};
  CHECK_THROWS_AS(embed_pulses(p, g), ConfigError);
  p.times_us = {2.0, 1.5};
  CHECK_THROWS_AS(embed_pulses(p, g), ConfigError);
  p.times_us = {8.0};
  CHECK_THROWS_AS(embed_pulses(p, g), ConfigError);
}

TEST_CASE("pulse file format is bit-exact and round-trips") {
  const Grid g = Grid::make(32.0, 0.16);
  SpinSequence seq;
  seq.grid = g;
  seq.s.assign(static_cast<std::size_t>(g.N), 1);
  for (int i = 13; i < 50; ++i) seq.s[static_cast<std::size_t>(i)] = -1;
  auto pulses = extract_pulses(seq, {{"method", "sign_sm_sa"},
                                     {"seed", "42"},
                                     {"config_sha256", "deadbeef"}});
  std::ostringstream out;
  write_pulse_file(out, pulses, g);
  const std::string expected =
      "# T_us=32.000000000\n"
      "# dt_us=0.160000000\n"
      "# N=200\n"
      "# method=sign_sm_sa\n"
      "# seed=42\n"
      "# config_sha256=deadbeef\n"
      "2.080000000\n"
      "8.000000000\n";
  CHECK(out.str() == expected);

  std::istringstream in(out.str());
  const PulseSequence back = read_pulse_file(in);
  CHECK(back.T_us == doctest::Approx(32.0));
  CHECK(back.metadata.at("method") == "sign_sm_sa");
  CHECK(back.metadata.at("config_sha256") == "deadbeef");
  REQUIRE(back.times_us.size() == 2);
  CHECK(back.times_us[0] == doctest::Approx(2.08));

  const SpinSequence parsed = embed_pulses(back, g);
  CHECK(parsed.pulse_count() == 2);
}

TEST_CASE("gcp maximizes the field overlap (monochromatic brute force, N <= 16)") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    SignalSpec mono{{{1.0, uniform(rng, 0.05, 1.0), uniform(rng, 0.0, 2.0 * pi)}}, true};
    const Grid g = Grid::make(8.0, 0.5);  // N = 16
    const auto h = build_field_vector(mono, g);
    const auto gcp = gcp_sequence(mono, g);
    const double overlap = field_overlap(gcp, h);
    double best = 0.0;  // brute force max of |sum h_i s_i| = sum |h_i|
    for (double v : h) best += std::abs(v);
    REQUIRE(overlap == doctest::Approx(best).epsilon(1e-12));
  }
}
