#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ddopt/config.hpp"
#include "ddopt/errors.hpp"
#include "ddopt/sha256.hpp"

using namespace ddopt;

namespace {

const char* kExampleConfig = R"cfg(
# trichromatic NV test case
[grid]
T_us = 32.0
dt_us = 0.16

[signal]
normalized = true
component = 0.288 0.1150 0.0
component = 0.335 0.2125 0.0
component = 0.377 0.1450 0.0

[noise]
kind = parametric
S0_MHz = 0.00119
A_MHz = 0.52
nu_L_MHz = 0.4316
sigma_nu_MHz = 0.0042

[run]
method = sign_sm_sa
seed = 7
)cfg";

}  // namespace

TEST_CASE("sha256 known test vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("The quick brown fox jumps over the lazy dog") ==
        "d7a8fbb307d7809469ca9abcb0082e4f8d5651e46d3cdb762d02d0bf37c9e592");
  // 56-byte message: padding spills into a second block
  CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  CHECK(sha256_hex(std::string(64, 'x')) != sha256_hex(std::string(63, 'x')));
}

TEST_CASE("config parses, validates and round-trips through its canonical form") {
  const RunConfig cfg = parse_run_config(kExampleConfig);
  CHECK(cfg.grid.N == 200);
  CHECK(cfg.signal.components.size() == 3);
  CHECK(cfg.signal.normalized);
  CHECK(cfg.noise.S0 == doctest::Approx(0.00119));
  CHECK(cfg.method == "sign_sm_sa");
  CHECK(cfg.seed == 7);
  CHECK(cfg.sched_unbiased.steps == 100000);
  CHECK(cfg.sched_domain_wall.steps == 1000);
  CHECK(cfg.sched_domain_wall.move_kind == MoveKind::domain_wall);

  const std::string canon = cfg.canonical();
  const RunConfig back = parse_run_config(canon);
  CHECK(back.canonical() == canon);          // lossless round trip
  CHECK(back.sha256() == cfg.sha256());      // stable content hash
  CHECK(cfg.sha256().size() == 64);
}

TEST_CASE("config diagnostics name the offending key") {
  CHECK_THROWS_AS(parse_run_config("[grid]\nT_us = 32\n"), ConfigError);  // dt missing
  CHECK_THROWS_WITH_AS(parse_run_config("[grid]\nT_us = 32\ndt_us = 0.16\nbogus = 1\n"
                                        "[signal]\ncomponent = 1 0 0\n"),
                       doctest::Contains("bogus"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_run_config("[grid]\nT_us = oops\ndt_us = 0.16\n"
                                        "[signal]\ncomponent = 1 0 0\n"),
                       doctest::Contains("T_us"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("key_without_section = 1\n"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_run_config("[grid]\nT_us = 32\ndt_us = 0.16\n"
                                        "[signal]\ncomponent = 1 0 0\n"
                                        "[run]\nmethod = warp\n"),
                       doctest::Contains("warp"), ConfigError);
}

TEST_CASE("ensemble spec defaults follow the benchmark convention") {
  const EnsembleSpec spec = parse_ensemble_spec("[ensemble]\nmaster_seed = 5\n");
  CHECK(spec.n_instances == 100);
  CHECK(spec.n_freq == 7);
  CHECK(spec.freq_max_mhz == doctest::Approx(1.0));
  CHECK(spec.noise.nu_L == doctest::Approx(0.4316));
  CHECK(spec.noise.sigma_nu == doctest::Approx(0.016));
  CHECK(spec.dt_us == doctest::Approx(0.1));
  CHECK(spec.T_list_us == std::vector<double>{20.0, 40.0, 60.0, 80.0, 100.0});
  CHECK(spec.methods == std::vector<std::string>{"gcp", "sign_sm", "sign_sm_sa"});
  CHECK(spec.master_seed == 5);
  const EnsembleSpec back = parse_ensemble_spec(spec.canonical());
  CHECK(back.canonical() == spec.canonical());

  CHECK_THROWS_AS(parse_ensemble_spec("[ensemble]\nmethods = cp\n"), ConfigError);
}

TEST_CASE("tabulated noise round-trips through the canonical form") {
  const std::string path = "test_nsd_rt_tmp.csv";
  {
    std::ofstream f(path);
    f << "1.0,0.2\n2.0,0.6\n3.0,0.1\n";
  }
  const std::string text = "[grid]\nT_us = 8\ndt_us = 0.5\n[signal]\ncomponent = 1 0 0\n"
                           "[noise]\nkind = tabulated\ntable_csv = " + path +
                           "\ntable_freq_unit = rad_us\n";
  const RunConfig cfg = parse_run_config(text);
  CHECK(cfg.noise.kind == NoiseSpec::Kind::tabulated);
  const RunConfig back = parse_run_config(cfg.canonical());
  CHECK(back.canonical() == cfg.canonical());
  CHECK(back.noise.value(1.5) == doctest::Approx(cfg.noise.value(1.5)));
  std::remove(path.c_str());
}

TEST_CASE("two-sided NSD data folds onto the one-sided convention") {
  const std::string base = "[grid]\nT_us = 8\ndt_us = 0.5\n[signal]\ncomponent = 1 0 0\n"
                           "[noise]\nS0_MHz = 0.1\nA_MHz = 0.2\nnu_L_MHz = 0.4\n"
                           "sigma_nu_MHz = 0.01\n";
  const RunConfig one = parse_run_config(base);
  const RunConfig two = parse_run_config(base + "sidedness = two_sided\n");
  CHECK(two.noise.S0 == doctest::Approx(2.0 * one.noise.S0));
  CHECK(two.noise.A == doctest::Approx(2.0 * one.noise.A));
  CHECK(two.noise.value(0.0) == doctest::Approx(2.0 * one.noise.value(0.0)));
  CHECK_THROWS_AS(parse_run_config(base + "sidedness = sideways\n"), ConfigError);
}

TEST_CASE("tabulated NSD loads from CSV in either frequency unit") {
  const std::string path = "test_nsd_tmp.csv";
  {
    std::ofstream f(path);
    f << "freq,S\n0.0,0.0\n1.0,0.5\n2.0,0.0\n";
  }
  const NoiseSpec rad = load_nsd_csv(path, "rad_us");
  CHECK(rad.omega_max == doctest::Approx(2.0));
  CHECK(rad.value(1.0) == doctest::Approx(0.5));

  const NoiseSpec mhz = load_nsd_csv(path, "MHz");
  CHECK(mhz.omega_max == doctest::Approx(2.0 * 2.0 * 3.14159265358979));
  CHECK(mhz.value(2.0 * 3.14159265358979) == doctest::Approx(0.5).epsilon(1e-9));

  CHECK_THROWS_AS(load_nsd_csv(path, "GHz"), ConfigError);
  CHECK_THROWS_AS(load_nsd_csv("no_such_file.csv", "MHz"), ConfigError);
  std::remove(path.c_str());
}
