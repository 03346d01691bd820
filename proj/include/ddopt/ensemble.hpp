#ifndef DDOPT_ENSEMBLE_HPP
#define DDOPT_ENSEMBLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ddopt/config.hpp"

namespace ddopt {

struct EnsembleRow {
  int instance = 0;
  double T_us = 0.0;
  std::string method;
  std::uint64_t seed = 0;
  int n_pulses = 0;
  double epsilon = 0.0;
  double epsilon_sm = 0.0;
  double eta = 0.0;
  double eta_sm = 0.0;
  double ratio = 0.0;  // eta_sm / eta
  bool failed = false;
  std::string error;
};

struct EnsembleSummaryRow {
  double T_us = 0.0;
  std::string method;
  double mean_ratio = 0.0;
  double p20_ratio = 0.0;
  double p80_ratio = 0.0;
  int count = 0;
};

struct EnsembleResult {
  std::vector<EnsembleRow> rows;  // instance-major, then T, then method
  std::vector<EnsembleSummaryRow> summary;
};

// Random test instance: n_freq uniform frequencies, uniform phases, amplitudes
// uniform then normalized to sum 1. Deterministic in the given seed.
SignalSpec random_ensemble_signal(const EnsembleSpec& spec, std::uint64_t seed);

// Runs every (instance, T, method) cell. Instances execute on a bounded worker
// pool; (J, eigenbasis) are shared per T; the row order is independent of the
// thread count. Per-instance failures are recorded and the run continues.
EnsembleResult run_ensemble(const EnsembleSpec& spec, int threads = 0);

// percentile with linear interpolation between order statistics
double percentile(std::vector<double> values, double p);

}  // namespace ddopt

#endif
