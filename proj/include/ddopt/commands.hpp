#ifndef DDOPT_COMMANDS_HPP
#define DDOPT_COMMANDS_HPP

#include <string>
#include <vector>

#include "ddopt/anneal.hpp"
#include "ddopt/config.hpp"
#include "ddopt/ensemble.hpp"
#include "ddopt/fit.hpp"
#include "ddopt/metrics.hpp"
#include "ddopt/spherical.hpp"

namespace ddopt {

struct BoundReport {
  SphericalSolution solution;
  std::string config_sha256;
  std::uint64_t seed = 0;
  double T_us = 0.0;
  int N = 0;
};

struct OptimizeReport {
  std::string method;
  std::uint64_t seed = 0;
  std::string config_sha256;
  SphericalSolution solution;
  Metrics metrics;           // meaningless for method = sm
  bool has_pulses = false;   // sm emits the bound only
  PulseSequence pulses;
  std::vector<TracePoint> trace;  // present when annealing was involved
};

struct SweepKPoint {
  double K = 0.0;
  int repeats = 0;
  double mean_pulses = 0.0;
  double sd_pulses = 0.0;
  double mean_ratio = 0.0;
  double sd_ratio = 0.0;
  double best_epsilon = 0.0;
};

BoundReport cmd_bound(const RunConfig& cfg);
OptimizeReport cmd_optimize(const RunConfig& cfg);
Metrics cmd_evaluate(const std::string& pulse_path, const RunConfig& cfg);
FitResult cmd_fit(const std::vector<PopulationSample>& samples, double T_us);
EnsembleResult cmd_ensemble(const EnsembleSpec& spec, int threads);
std::vector<SweepKPoint> cmd_sweep_k(const RunConfig& cfg,
                                     const std::vector<double>& k_values, int repeats);

// ---- serialization ----------------------------------------------------------

std::string metrics_to_json(const Metrics& m, const std::string& method,
                            std::uint64_t seed, const std::string& config_sha256,
                            const SphericalSolution* solution);
std::string solution_to_json(const SphericalSolution& sol,
                             const std::string& config_sha256, std::uint64_t seed);
std::string fit_to_json(const FitResult& fit, double T_us);

// CSV columns: T_us,dt_us,n_pulses,phase_per_field,chi,epsilon,eta,eta_sm_ratio
std::string metrics_csv_header();
std::string metrics_csv_row(const Metrics& m);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

void write_trace_csv(const std::string& path, const std::vector<TracePoint>& trace,
                     const std::string& config_sha256, std::uint64_t seed);
void write_ensemble_csv(const std::string& path, const EnsembleResult& result,
                        const std::string& config_sha256, std::uint64_t master_seed);
void write_ensemble_summary_csv(const std::string& path, const EnsembleResult& result,
                                const std::string& config_sha256,
                                std::uint64_t master_seed);
std::string sweep_k_csv(const std::vector<SweepKPoint>& points,
                        const std::string& config_sha256, std::uint64_t seed);

// data CSV with columns b,P,sigma_P (header optional)
std::vector<PopulationSample> load_population_csv(const std::string& path);

}  // namespace ddopt

#endif
