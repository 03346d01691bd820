#ifndef DDOPT_CONFIG_HPP
#define DDOPT_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ddopt/anneal.hpp"
#include "ddopt/grid.hpp"
#include "ddopt/noise.hpp"
#include "ddopt/signal.hpp"
#include "ddopt/spherical.hpp"

namespace ddopt {

// NV electron gyromagnetic ratio, 2*pi * 0.028 rad / (us * uT). Configurable;
// comparative outputs use the dimensionless epsilon and eta_SM/eta, which do
// not depend on it.
inline constexpr double kDefaultGamma = 0.17592918860102841;

struct RunConfig {
  SignalSpec signal;
  NoiseSpec noise = NoiseSpec::none();
  Grid grid;
  AnnealSchedule sched_unbiased;    // move_kind = unbiased
  AnnealSchedule sched_domain_wall; // move_kind = domain_wall, K = 0
  std::string method = "sign_sm_sa";
  int cp_n = 0;
  double cp_tau_us = 0.0;
  double gamma = kDefaultGamma;
  std::uint64_t seed = 1;
  DiagMode diag_mode = DiagMode::exact;
  double quad_rel_tol = 1e-8;

  // full effective config in a fixed key order; hashes and round-trips losslessly
  std::string canonical() const;
  std::string sha256() const;
};

struct EnsembleSpec {
  int n_instances = 100;
  int n_freq = 7;
  double freq_min_mhz = 0.0;
  double freq_max_mhz = 1.0;
  NoiseSpec noise = NoiseSpec::parametric(0.0, 1.0, 0.4316, 0.016);
  double dt_us = 0.1;
  std::vector<double> T_list_us = {20.0, 40.0, 60.0, 80.0, 100.0};
  std::vector<std::string> methods = {"gcp", "sign_sm", "sign_sm_sa"};
  std::uint64_t master_seed = 1;
  AnnealSchedule sched_unbiased;
  AnnealSchedule sched_domain_wall;
  double gamma = kDefaultGamma;

  std::string canonical() const;
  std::string sha256() const;
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);
EnsembleSpec parse_ensemble_spec(const std::string& text);
EnsembleSpec load_ensemble_spec(const std::string& path);

// default schedules: 1e5-step unbiased ramp, 1e3-step domain-wall ramp
AnnealSchedule default_unbiased_schedule();
AnnealSchedule default_domain_wall_schedule();

// two-column NSD table (frequency, S[MHz]); freq_unit "rad_us" or "MHz"
NoiseSpec load_nsd_csv(const std::string& path, const std::string& freq_unit);

std::string format_g17(double x);

}  // namespace ddopt

#endif
