#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddopt/commands.hpp"
#include "ddopt/errors.hpp"
#include "ddopt/plot.hpp"

namespace fs = std::filesystem;
using namespace ddopt;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::string format = "text";  // text | json | csv
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool json_errors = false;
};

int default_threads() {
  if (const char* env = std::getenv("DDOPT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 0;  // library picks hardware_concurrency
}

void ensure_out_dir(const std::string& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory: " + dir);
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

RunConfig load_config(const CommonArgs& args, const std::string& method_override) {
  if (args.config_path.empty()) throw ConfigError("--config is required");
  RunConfig cfg = load_run_config(args.config_path);
  if (args.seed_set) cfg.seed = args.seed;
  if (!method_override.empty()) cfg.method = method_override;
  return cfg;
}

void print_metrics_text(const Metrics& m) {
  std::printf("T = %g us, dt = %g us, pulses = %d\n", m.T, m.dt, m.pulse_count);
  std::printf("phase per field  = %.12g rad/field\n", m.phase_per_field);
  std::printf("chi              = %.12g\n", m.chi);
  std::printf("epsilon          = %.12g\n", m.epsilon);
  std::printf("eta              = %.12g field*sqrt(us)\n", m.eta);
  std::printf("eta_SM / eta     = %.12g\n", m.eta_sm_ratio);
}

void emit_metrics(const CommonArgs& args, const Metrics& m, const std::string& method,
                  std::uint64_t seed, const std::string& hash,
                  const SphericalSolution* sol) {
  if (args.format == "json") {
    std::cout << metrics_to_json(m, method, seed, hash, sol);
  } else if (args.format == "csv") {
    std::cout << metrics_csv_header() << metrics_csv_row(m);
  } else {
    print_metrics_text(m);
  }
}

int run_bound(const CommonArgs& args) {
  const RunConfig cfg = load_config(args, "");
  const BoundReport report = cmd_bound(cfg);
  const auto& s = report.solution;
  if (args.format == "json") {
    std::cout << solution_to_json(s, report.config_sha256, report.seed);
  } else {
    std::printf("spherical bound over N = %d cells, T = %g us\n", report.N, report.T_us);
    std::printf("epsilon_SM = %.12g\n", s.epsilon_sm);
    std::printf("eta_SM     = %.12g field*sqrt(us)\n", s.eta_sm);
    std::printf("lambda     = %.12g\n", s.lambda);
    std::printf("constraint residual   = %.3g\n", s.constraint_residual);
    std::printf("stationarity residual = %.3g\n", s.stationarity_residual);
    if (s.bracket_warning) std::printf("warning: multiplier search hit the bracket edge\n");
  }
  if (!args.out_dir.empty()) {
    ensure_out_dir(args.out_dir);
    write_text_file(join(args.out_dir, "solution.json"),
                    solution_to_json(s, report.config_sha256, report.seed));
  }
  return exit_ok;
}

int run_optimize(const CommonArgs& args, const std::string& method_override) {
  const RunConfig cfg = load_config(args, method_override);
  const OptimizeReport report = cmd_optimize(cfg);
  if (!report.has_pulses) {
    // method = sm: the spherical solution is not a pulse sequence; emit the bound
    if (args.format == "json") {
      std::cout << solution_to_json(report.solution, report.config_sha256, report.seed);
    } else {
      std::printf("method sm: spherical bound only (no pulse sequence)\n");
      std::printf("epsilon_SM = %.12g, eta_SM = %.12g\n", report.solution.epsilon_sm,
                  report.solution.eta_sm);
    }
  } else {
    emit_metrics(args, report.metrics, report.method, report.seed, report.config_sha256,
                 &report.solution);
  }
  if (!args.out_dir.empty()) {
    ensure_out_dir(args.out_dir);
    write_text_file(join(args.out_dir, "solution.json"),
                    solution_to_json(report.solution, report.config_sha256, report.seed));
    write_text_file(join(args.out_dir, "solution.svg"),
                    solution_profile_svg(report.solution, cfg.grid));
    if (report.has_pulses) {
      std::ostringstream pulse_text;
      write_pulse_file(pulse_text, report.pulses, cfg.grid);
      write_text_file(join(args.out_dir, "pulses.txt"), pulse_text.str());
      write_text_file(join(args.out_dir, "metrics.json"),
                      metrics_to_json(report.metrics, report.method, report.seed,
                                      report.config_sha256, &report.solution));
      write_text_file(join(args.out_dir, "metrics.csv"),
                      "# config_sha256=" + report.config_sha256 + "\n# seed=" +
                          std::to_string(report.seed) + "\n" + metrics_csv_header() +
                          metrics_csv_row(report.metrics));
    }
    if (!report.trace.empty()) {
      write_trace_csv(join(args.out_dir, "trace.csv"), report.trace,
                      report.config_sha256, report.seed);
      write_text_file(join(args.out_dir, "trace.svg"), trace_svg(report.trace));
    }
  }
  return exit_ok;
}

int run_evaluate(const CommonArgs& args, const std::string& pulse_path) {
  const RunConfig cfg = load_config(args, "");
  const Metrics m = cmd_evaluate(pulse_path, cfg);
  emit_metrics(args, m, "evaluate", cfg.seed, cfg.sha256(), nullptr);
  if (!args.out_dir.empty()) {
    ensure_out_dir(args.out_dir);
    write_text_file(join(args.out_dir, "metrics.json"),
                    metrics_to_json(m, "evaluate", cfg.seed, cfg.sha256(), nullptr));
    write_text_file(join(args.out_dir, "metrics.csv"),
                    "# config_sha256=" + cfg.sha256() + "\n# seed=" +
                        std::to_string(cfg.seed) + "\n" + metrics_csv_header() +
                        metrics_csv_row(m));
  }
  return exit_ok;
}

int run_ensemble_cmd(const CommonArgs& args, int threads) {
  if (args.config_path.empty()) throw ConfigError("--config is required");
  EnsembleSpec spec = load_ensemble_spec(args.config_path);
  if (args.seed_set) spec.master_seed = args.seed;
  const EnsembleResult result = cmd_ensemble(spec, threads);
  std::printf("T_us, method, mean(eta_SM/eta), p20, p80, count\n");
  for (const auto& s : result.summary) {
    std::printf("%6g  %-12s  %.4f  %.4f  %.4f  %d\n", s.T_us, s.method.c_str(),
                s.mean_ratio, s.p20_ratio, s.p80_ratio, s.count);
  }
  if (!args.out_dir.empty()) {
    ensure_out_dir(args.out_dir);
    write_ensemble_csv(join(args.out_dir, "ensemble.csv"), result, spec.sha256(),
                       spec.master_seed);
    write_ensemble_summary_csv(join(args.out_dir, "ensemble_summary.csv"), result,
                               spec.sha256(), spec.master_seed);
    write_text_file(join(args.out_dir, "ensemble_summary.svg"),
                    ensemble_summary_svg(result));
  }
  int failed = 0;
  for (const auto& r : result.rows) failed += r.failed ? 1 : 0;
  if (failed > 0) std::fprintf(stderr, "%d cell(s) failed; see the ensemble CSV\n", failed);
  return exit_ok;
}

int run_fit(const CommonArgs& args, const std::string& data_path, double T_us) {
  const auto samples = load_population_csv(data_path);
  const FitResult fit = cmd_fit(samples, T_us);
  if (args.format == "json") {
    std::cout << fit_to_json(fit, T_us);
  } else {
    std::printf("chi        = %.10g +/- %.3g\n", fit.chi, fit.se_chi);
    std::printf("phi/b      = %.10g +/- %.3g rad/field\n", fit.phi_over_b,
                fit.se_phi_over_b);
    std::printf("eta        = %.10g +/- %.3g field*sqrt(us)\n", fit.eta, fit.se_eta);
    std::printf("wrss = %.6g after %d iterations\n", fit.wrss, fit.iterations);
  }
  if (!args.out_dir.empty()) {
    ensure_out_dir(args.out_dir);
    write_text_file(join(args.out_dir, "fit.json"), fit_to_json(fit, T_us));
  }
  return exit_ok;
}

int run_sweep_k(const CommonArgs& args, const std::string& k_values_csv, int repeats) {
  const RunConfig cfg = load_config(args, "sa");
  std::vector<double> ks;
  std::stringstream ss(k_values_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) ks.push_back(std::stod(tok));
  }
  const auto points = cmd_sweep_k(cfg, ks, repeats);
  std::printf("K, repeats, mean_pulses, sd_pulses, mean_ratio, sd_ratio, best_epsilon\n");
  for (const auto& p : points) {
    std::printf("%8g  %3d  %8.2f %7.2f  %.4f %.4f  %.8g\n", p.K, p.repeats,
                p.mean_pulses, p.sd_pulses, p.mean_ratio, p.sd_ratio, p.best_epsilon);
  }
  // the SM-seeded result is the reference point the K sweep is judged against
  RunConfig ref_cfg = cfg;
  ref_cfg.method = "sign_sm_sa";
  const OptimizeReport ref = cmd_optimize(ref_cfg);
  std::printf("sign_sm_sa reference: pulses = %d, ratio = %.4f, epsilon = %.8g\n",
              ref.metrics.pulse_count, ref.metrics.eta_sm_ratio, ref.metrics.epsilon);
  if (!args.out_dir.empty()) {
    ensure_out_dir(args.out_dir);
    std::string csv = sweep_k_csv(points, cfg.sha256(), cfg.seed);
    csv += "# sign_sm_sa_reference: pulses=" + std::to_string(ref.metrics.pulse_count) +
           " ratio=" + std::to_string(ref.metrics.eta_sm_ratio) + "\n";
    write_text_file(join(args.out_dir, "sweep_k.csv"), csv);
  }
  return exit_ok;
}

int fail(const CommonArgs& args, int code, const char* kind, const std::string& what) {
  if (args.json_errors) {
    nlohmann::json j;
    j["error"] = {{"kind", kind}, {"message", what}, {"exit_code", code}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::fprintf(stderr, "error (%s): %s\n", kind, what.c_str());
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ddopt: optimal dynamical-decoupling sequences for AC quantum sensing"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string method_override, pulse_path, data_path, k_values = "0";
  double fit_T = 0.0;
  int threads = default_threads();
  int repeats = 10;

  auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
    if (needs_config) cmd->add_option("--config", args.config_path, "configuration file");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--format", args.format, "stdout format: text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--seed", args.seed, "seed override")
        ->each([&](const std::string&) { args.seed_set = true; });
    cmd->add_flag("--json-errors", args.json_errors, "emit errors as JSON on stdout");
  };

  CLI::App* bound = app.add_subcommand("bound", "spherical-model sensitivity bound");
  add_common(bound);

  CLI::App* optimize = app.add_subcommand("optimize", "produce an optimized pulse sequence");
  add_common(optimize);
  optimize->add_option("--method", method_override,
                       "sm | sign_sm | sign_sm_sa | sa | cp | gcp (overrides config)");

  CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate an external pulse file");
  add_common(evaluate);
  evaluate->add_option("--pulses", pulse_path, "pulse file")->required();

  CLI::App* ensemble = app.add_subcommand("ensemble", "random-instance benchmark");
  add_common(ensemble);
  ensemble->add_option("--threads", threads, "worker threads (default: DDOPT_THREADS or all cores)");

  CLI::App* fit = app.add_subcommand("fit", "fit chi and phi/b from P(b) data");
  add_common(fit, /*needs_config=*/false);
  fit->add_option("--data", data_path, "CSV with columns b,P,sigma_P")->required();
  fit->add_option("--T", fit_T, "sensing time T [us]")->required();

  CLI::App* sweep = app.add_subcommand("sweep-k", "unbiased-SA sweep over the ferromagnetic K");
  add_common(sweep);
  sweep->add_option("--k-values", k_values, "comma-separated K values");
  sweep->add_option("--repeats", repeats, "annealing repetitions per K");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config_error;
  }

  try {
    if (bound->parsed()) return run_bound(args);
    if (optimize->parsed()) return run_optimize(args, method_override);
    if (evaluate->parsed()) return run_evaluate(args, pulse_path);
    if (ensemble->parsed()) return run_ensemble_cmd(args, threads);
    if (fit->parsed()) return run_fit(args, data_path, fit_T);
    if (sweep->parsed()) return run_sweep_k(args, k_values, repeats);
  } catch (const ConfigError& e) {
    return fail(args, exit_config_error, "config", e.what());
  } catch (const DegenerateInputError& e) {
    return fail(args, exit_degenerate_input, "degenerate-input", e.what());
  } catch (const NumericalError& e) {
    return fail(args, exit_numerical_error, "numerical", e.what());
  } catch (const std::exception& e) {
    return fail(args, exit_numerical_error, "internal", e.what());
  }
  return exit_config_error;
}
