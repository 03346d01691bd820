#include "ddopt/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "ddopt/anneal.hpp"
#include "ddopt/coupling.hpp"
#include "ddopt/errors.hpp"
#include "ddopt/metrics.hpp"
#include "ddopt/rng.hpp"
#include "ddopt/spherical.hpp"

namespace ddopt {

SignalSpec random_ensemble_signal(const EnsembleSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SignalSpec sig;
  sig.normalized = true;
  sig.components.resize(static_cast<std::size_t>(spec.n_freq));
  double amp_sum = 0.0;
  for (auto& c : sig.components) {
    c.freq_mhz = uniform(rng, spec.freq_min_mhz, spec.freq_max_mhz);
    c.phase_rad = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    c.amplitude = uniform01(rng);
    amp_sum += c.amplitude;
  }
  for (auto& c : sig.components) c.amplitude /= amp_sum;
  return sig;
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double rank = p / 100.0 * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(rank));
  if (lo + 1 >= values.size()) return values.back();
  const double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

namespace {

struct SharedPerT {
  Grid grid;
  CouplingMatrix J;
  Eigenbasis basis;
};

EnsembleRow make_failed_row(int instance, double T, const std::string& method,
                            const std::string& what) {
  EnsembleRow row;
  row.instance = instance;
  row.T_us = T;
  row.method = method;
  row.failed = true;
  row.error = what;
  return row;
}

}  // namespace

EnsembleResult run_ensemble(const EnsembleSpec& spec, int threads) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }

  const std::size_t n_T = spec.T_list_us.size();
  const std::size_t n_methods = spec.methods.size();

  // shared per-T model data; J and its eigenbasis do not depend on the instance
  std::vector<SharedPerT> shared(n_T);
  {
    std::atomic<std::size_t> next{0};
    auto build = [&]() {
      for (;;) {
        const std::size_t t = next.fetch_add(1);
        if (t >= n_T) return;
        shared[t].grid = Grid::make(spec.T_list_us[t], spec.dt_us);
        shared[t].J = build_coupling_matrix(spec.noise, shared[t].grid);
        shared[t].basis = Eigenbasis::exact(shared[t].J);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<int>(threads, static_cast<int>(n_T)); ++w) {
      pool.emplace_back(build);
    }
    for (auto& th : pool) th.join();
  }

  EnsembleResult result;
  result.rows.resize(static_cast<std::size_t>(spec.n_instances) * n_T * n_methods);

  std::atomic<int> next_instance{0};
  auto worker = [&]() {
    for (;;) {
      const int inst = next_instance.fetch_add(1);
      if (inst >= spec.n_instances) return;
      const std::uint64_t inst_seed = derive_seed(spec.master_seed, static_cast<std::uint64_t>(inst));
      SignalSpec signal;
      bool signal_ok = true;
      std::string signal_err;
      try {
        signal = random_ensemble_signal(spec, inst_seed);
      } catch (const std::exception& e) {
        signal_ok = false;
        signal_err = e.what();
      }

      for (std::size_t t = 0; t < n_T; ++t) {
        const SharedPerT& sh = shared[t];
        std::vector<double> h;
        SphericalSolution sm;
        bool model_ok = signal_ok;
        std::string model_err = signal_err;
        if (model_ok) {
          try {
            h = build_field_vector(signal, sh.grid);
            sm = solve_spherical(h, sh.J, sh.grid, spec.gamma, DiagMode::exact, &sh.basis);
          } catch (const std::exception& e) {
            model_ok = false;
            model_err = e.what();
          }
        }

        for (std::size_t m = 0; m < n_methods; ++m) {
          const std::size_t row_idx =
              (static_cast<std::size_t>(inst) * n_T + t) * n_methods + m;
          const std::string& method = spec.methods[m];
          if (!model_ok) {
            result.rows[row_idx] =
                make_failed_row(inst, spec.T_list_us[t], method, model_err);
            continue;
          }
          const std::uint64_t run_seed =
              derive_seed(inst_seed, 1 + t * 131ull + m * 9176ull);
          try {
            SpinSequence seq;
            if (method == "gcp") {
              seq = gcp_sequence(signal, sh.grid);
            } else if (method == "sign_sm") {
              seq = project_to_hypercube(sm, sh.grid);
            } else if (method == "sign_sm_sa") {
              AnnealSchedule sched = spec.sched_domain_wall;
              sched.move_kind = MoveKind::domain_wall;
              sched.seed = run_seed;
              seq = anneal_domain_wall(project_to_hypercube(sm, sh.grid), h, sh.J, sched).best;
            } else if (method == "sa") {
              AnnealSchedule sched = spec.sched_unbiased;
              sched.move_kind = MoveKind::unbiased;
              sched.seed = run_seed;
              seq = anneal_unbiased(h, sh.J, sh.grid, sched).best;
            } else {
              throw ConfigError("ensemble: unsupported method " + method);
            }
            const Metrics met = compute_metrics(seq, h, sh.J, spec.gamma, sm.eta_sm);
            EnsembleRow row;
            row.instance = inst;
            row.T_us = spec.T_list_us[t];
            row.method = method;
            row.seed = run_seed;
            row.n_pulses = met.pulse_count;
            row.epsilon = met.epsilon;
            row.epsilon_sm = sm.epsilon_sm;
            row.eta = met.eta;
            row.eta_sm = sm.eta_sm;
            row.ratio = met.eta_sm_ratio;
            result.rows[row_idx] = row;
          } catch (const std::exception& e) {
            result.rows[row_idx] =
                make_failed_row(inst, spec.T_list_us[t], method, e.what());
          }
        }
      }
    }
  };

  {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // ordered aggregation, independent of worker interleaving
  for (std::size_t t = 0; t < n_T; ++t) {
    for (std::size_t m = 0; m < n_methods; ++m) {
      std::vector<double> ratios;
      for (int inst = 0; inst < spec.n_instances; ++inst) {
        const auto& row =
            result.rows[(static_cast<std::size_t>(inst) * n_T + t) * n_methods + m];
        if (!row.failed && std::isfinite(row.ratio)) ratios.push_back(row.ratio);
      }
      EnsembleSummaryRow s;
      s.T_us = spec.T_list_us[t];
      s.method = spec.methods[m];
      s.count = static_cast<int>(ratios.size());
      if (!ratios.empty()) {
        double sum = 0.0;
        for (double r : ratios) sum += r;
        s.mean_ratio = sum / static_cast<double>(ratios.size());
        s.p20_ratio = percentile(ratios, 20.0);
        s.p80_ratio = percentile(ratios, 80.0);
      }
      result.summary.push_back(s);
    }
  }
  return result;
}

}  // namespace ddopt
