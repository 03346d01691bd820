#include "ddopt/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ddopt/coupling.hpp"
#include "ddopt/errors.hpp"
#include "ddopt/oracle.hpp"
#include "ddopt/rng.hpp"

namespace ddopt {

namespace {

using nlohmann::json;

// non-finite values are not representable in JSON; emit them as strings
json finite_or_string(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

std::string num17(double x) {
  if (std::isfinite(x)) return format_g17(x);
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

SpinSequence sequence_for_method(const RunConfig& cfg, const std::vector<double>& h,
                                 const CouplingMatrix& J, const SphericalSolution& sm,
                                 std::vector<TracePoint>* trace) {
  if (cfg.method == "gcp") return gcp_sequence(cfg.signal, cfg.grid);
  if (cfg.method == "cp") return cp_sequence(cfg.cp_n, cfg.cp_tau_us, cfg.grid);
  if (cfg.method == "sign_sm") return project_to_hypercube(sm, cfg.grid);
  if (cfg.method == "sign_sm_sa") {
    AnnealSchedule sched = cfg.sched_domain_wall;
    sched.move_kind = MoveKind::domain_wall;
    sched.seed = cfg.seed;
    AnnealResult res = anneal_domain_wall(project_to_hypercube(sm, cfg.grid), h, J, sched);
    if (trace) *trace = std::move(res.trace);
    return res.best;
  }
  if (cfg.method == "sa") {
    AnnealSchedule sched = cfg.sched_unbiased;
    sched.move_kind = MoveKind::unbiased;
    sched.seed = cfg.seed;
    AnnealResult res = anneal_unbiased(h, J, cfg.grid, sched);
    if (trace) *trace = std::move(res.trace);
    return res.best;
  }
  throw ConfigError("unknown method: " + cfg.method);
}

}  // namespace

BoundReport cmd_bound(const RunConfig& cfg) {
  const auto h = build_field_vector(cfg.signal, cfg.grid);
  const auto J = build_coupling_matrix(cfg.noise, cfg.grid, cfg.quad_rel_tol);
  BoundReport report;
  report.solution = solve_spherical(h, J, cfg.grid, cfg.gamma, cfg.diag_mode);
  report.config_sha256 = cfg.sha256();
  report.seed = cfg.seed;
  report.T_us = cfg.grid.T;
  report.N = cfg.grid.N;
  return report;
}

OptimizeReport cmd_optimize(const RunConfig& cfg) {
  const auto h = build_field_vector(cfg.signal, cfg.grid);
  const auto J = build_coupling_matrix(cfg.noise, cfg.grid, cfg.quad_rel_tol);

  OptimizeReport report;
  report.method = cfg.method;
  report.seed = cfg.seed;
  report.config_sha256 = cfg.sha256();
  report.solution = solve_spherical(h, J, cfg.grid, cfg.gamma, cfg.diag_mode);

  if (cfg.method == "sm") {
    report.has_pulses = false;
    return report;
  }

  const SpinSequence seq = sequence_for_method(cfg, h, J, report.solution, &report.trace);
  report.metrics = compute_metrics(seq, h, J, cfg.gamma, report.solution.eta_sm);
  report.pulses = extract_pulses(
      seq, {{"method", cfg.method},
            {"seed", std::to_string(cfg.seed)},
            {"config_sha256", report.config_sha256}});
  report.has_pulses = true;
  return report;
}

Metrics cmd_evaluate(const std::string& pulse_path, const RunConfig& cfg) {
  const PulseSequence pulses = read_pulse_file(pulse_path);
  if (auto it = pulses.metadata.find("dt_us"); it != pulses.metadata.end()) {
    if (std::abs(std::stod(it->second) - cfg.grid.dt) > 1e-9) {
      throw ConfigError("evaluate: pulse file dt does not match the config grid");
    }
  }
  const SpinSequence seq = embed_pulses(pulses, cfg.grid);
  const auto h = build_field_vector(cfg.signal, cfg.grid);
  const auto J = build_coupling_matrix(cfg.noise, cfg.grid, cfg.quad_rel_tol);
  const SphericalSolution sm = solve_spherical(h, J, cfg.grid, cfg.gamma, cfg.diag_mode);
  return compute_metrics(seq, h, J, cfg.gamma, sm.eta_sm);
}

FitResult cmd_fit(const std::vector<PopulationSample>& samples, double T_us) {
  return fit_population_curve(samples, T_us);
}

EnsembleResult cmd_ensemble(const EnsembleSpec& spec, int threads) {
  return run_ensemble(spec, threads);
}

std::vector<SweepKPoint> cmd_sweep_k(const RunConfig& cfg,
                                     const std::vector<double>& k_values, int repeats) {
  if (k_values.empty()) throw ConfigError("sweep-k: need at least one K value");
  if (repeats < 1) throw ConfigError("sweep-k: repeats must be >= 1");
  const auto h = build_field_vector(cfg.signal, cfg.grid);
  const auto J = build_coupling_matrix(cfg.noise, cfg.grid, cfg.quad_rel_tol);
  const SphericalSolution sm = solve_spherical(h, J, cfg.grid, cfg.gamma, cfg.diag_mode);

  std::vector<SweepKPoint> out;
  for (std::size_t ki = 0; ki < k_values.size(); ++ki) {
    SweepKPoint point;
    point.K = k_values[ki];
    point.repeats = repeats;
    point.best_epsilon = std::numeric_limits<double>::infinity();
    std::vector<double> pulses, ratios;
    for (int r = 0; r < repeats; ++r) {
      AnnealSchedule sched = cfg.sched_unbiased;
      sched.move_kind = MoveKind::unbiased;
      sched.K = k_values[ki];
      sched.seed = derive_seed(cfg.seed, 1000ull * ki + static_cast<std::uint64_t>(r));
      const AnnealResult res = anneal_unbiased(h, J, cfg.grid, sched);
      const Metrics met = compute_metrics(res.best, h, J, cfg.gamma, sm.eta_sm);
      pulses.push_back(static_cast<double>(met.pulse_count));
      ratios.push_back(std::isfinite(met.eta_sm_ratio) ? met.eta_sm_ratio : 0.0);
      point.best_epsilon = std::min(point.best_epsilon, met.epsilon);
    }
    auto mean_sd = [](const std::vector<double>& v, double& mean, double& sd) {
      mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      double acc = 0.0;
      for (double x : v) acc += (x - mean) * (x - mean);
      sd = v.size() > 1 ? std::sqrt(acc / static_cast<double>(v.size() - 1)) : 0.0;
    };
    mean_sd(pulses, point.mean_pulses, point.sd_pulses);
    mean_sd(ratios, point.mean_ratio, point.sd_ratio);
    out.push_back(point);
  }
  return out;
}

// ---- serialization ----------------------------------------------------------

std::string metrics_to_json(const Metrics& m, const std::string& method,
                            std::uint64_t seed, const std::string& config_sha256,
                            const SphericalSolution* solution) {
  json j;
  j["T_us"] = m.T;
  j["dt_us"] = m.dt;
  j["method"] = method;
  j["seed"] = seed;
  j["config_sha256"] = config_sha256;
  j["n_pulses"] = m.pulse_count;
  j["overlap"] = finite_or_string(m.overlap);
  j["phase_per_field"] = finite_or_string(m.phase_per_field);
  j["chi"] = finite_or_string(m.chi);
  j["epsilon"] = finite_or_string(m.epsilon);
  j["eta"] = finite_or_string(m.eta);
  j["eta_sm_ratio"] = finite_or_string(m.eta_sm_ratio);
  if (solution) {
    j["epsilon_sm"] = finite_or_string(solution->epsilon_sm);
    j["eta_sm"] = finite_or_string(solution->eta_sm);
  }
  return j.dump(2) + "\n";
}

std::string solution_to_json(const SphericalSolution& sol,
                             const std::string& config_sha256, std::uint64_t seed) {
  json j;
  j["config_sha256"] = config_sha256;
  j["seed"] = seed;
  j["lambda"] = sol.lambda;
  j["D"] = sol.D;
  j["epsilon_sm"] = sol.epsilon_sm;
  j["eta_sm"] = sol.eta_sm;
  j["constraint_residual"] = sol.constraint_residual;
  j["stationarity_residual"] = sol.stationarity_residual;
  j["constraint_ok"] = sol.constraint_ok;
  j["bracket_warning"] = sol.bracket_warning;
  j["y"] = sol.y;
  return j.dump(2) + "\n";
}

std::string fit_to_json(const FitResult& fit, double T_us) {
  json j;
  j["T_us"] = T_us;
  j["chi"] = fit.chi;
  j["chi_se"] = fit.se_chi;
  j["phi_over_b"] = fit.phi_over_b;
  j["phi_over_b_se"] = fit.se_phi_over_b;
  j["cov_chi_phi_over_b"] = fit.cov;
  j["eta"] = finite_or_string(fit.eta);
  j["eta_se"] = finite_or_string(fit.se_eta);
  j["wrss"] = fit.wrss;
  j["iterations"] = fit.iterations;
  return j.dump(2) + "\n";
}

std::string metrics_csv_header() {
  return "T_us,dt_us,n_pulses,phase_per_field,chi,epsilon,eta,eta_sm_ratio\n";
}

std::string metrics_csv_row(const Metrics& m) {
  std::string out;
  out += num17(m.T);
  out += ",";
  out += num17(m.dt);
  out += ",";
  out += std::to_string(m.pulse_count);
  out += ",";
  out += num17(m.phase_per_field);
  out += ",";
  out += num17(m.chi);
  out += ",";
  out += num17(m.epsilon);
  out += ",";
  out += num17(m.eta);
  out += ",";
  out += num17(m.eta_sm_ratio);
  out += "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  f << content;
  if (!f.good()) throw ConfigError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_trace_csv(const std::string& path, const std::vector<TracePoint>& trace,
                     const std::string& config_sha256, std::uint64_t seed) {
  std::string out = "# config_sha256=" + config_sha256 + "\n";
  out += "# seed=" + std::to_string(seed) + "\n";
  out += "step,temperature,epsilon,best_epsilon\n";
  for (const auto& p : trace) {
    out += std::to_string(p.step) + "," + num17(p.temperature) + "," +
           num17(p.epsilon) + "," + num17(p.best_epsilon) + "\n";
  }
  write_text_file(path, out);
}

void write_ensemble_csv(const std::string& path, const EnsembleResult& result,
                        const std::string& config_sha256, std::uint64_t master_seed) {
  std::string out = "# config_sha256=" + config_sha256 + "\n";
  out += "# master_seed=" + std::to_string(master_seed) + "\n";
  out += "instance,T_us,method,seed,n_pulses,epsilon,epsilon_sm,eta,eta_sm,ratio,failed,error\n";
  for (const auto& r : result.rows) {
    out += std::to_string(r.instance) + "," + num17(r.T_us) + "," + r.method + "," +
           std::to_string(r.seed) + "," + std::to_string(r.n_pulses) + "," +
           num17(r.epsilon) + "," + num17(r.epsilon_sm) + "," + num17(r.eta) + "," +
           num17(r.eta_sm) + "," + num17(r.ratio) + "," + (r.failed ? "1" : "0") + "," +
           r.error + "\n";
  }
  write_text_file(path, out);
}

void write_ensemble_summary_csv(const std::string& path, const EnsembleResult& result,
                                const std::string& config_sha256,
                                std::uint64_t master_seed) {
  std::string out = "# config_sha256=" + config_sha256 + "\n";
  out += "# master_seed=" + std::to_string(master_seed) + "\n";
  out += "T_us,method,mean_ratio,p20_ratio,p80_ratio,count\n";
  for (const auto& s : result.summary) {
    out += num17(s.T_us) + "," + s.method + "," + num17(s.mean_ratio) + "," +
           num17(s.p20_ratio) + "," + num17(s.p80_ratio) + "," +
           std::to_string(s.count) + "\n";
  }
  write_text_file(path, out);
}

std::string sweep_k_csv(const std::vector<SweepKPoint>& points,
                        const std::string& config_sha256, std::uint64_t seed) {
  std::string out = "# config_sha256=" + config_sha256 + "\n";
  out += "# seed=" + std::to_string(seed) + "\n";
  out += "K,repeats,mean_pulses,sd_pulses,mean_ratio,sd_ratio,best_epsilon\n";
  for (const auto& p : points) {
    out += num17(p.K) + "," + std::to_string(p.repeats) + "," + num17(p.mean_pulses) +
           "," + num17(p.sd_pulses) + "," + num17(p.mean_ratio) + "," +
           num17(p.sd_ratio) + "," + num17(p.best_epsilon) + "\n";
  }
  return out;
}

std::vector<PopulationSample> load_population_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open data CSV: " + path);
  std::vector<PopulationSample> samples;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    PopulationSample s;
    if (!(ss >> s.b >> s.P >> s.sigma_P)) {
      if (lineno == 1) continue;  // header row
      throw ConfigError("data CSV " + path + " line " + std::to_string(lineno) +
                        ": expected 'b,P,sigma_P'");
    }
    samples.push_back(s);
  }
  if (samples.empty()) throw ConfigError("data CSV " + path + ": no samples");
  return samples;
}

}  // namespace ddopt
