#include "ddopt/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ddopt/errors.hpp"
#include "ddopt/sha256.hpp"

namespace ddopt {

namespace {

struct Entry {
  std::string key, value;
  int line;
};
using Sections = std::map<std::string, std::vector<Entry>>;

Sections parse_sections(const std::string& text) {
  Sections out;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      out[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    if (section.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": key outside any [section]");
    }
    out[section].push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno});
  }
  return out;
}

class SectionReader {
 public:
  SectionReader(const Sections& all, const std::string& name) : name_(name) {
    auto it = all.find(name);
    if (it != all.end()) entries_ = &it->second;
  }

  bool present() const { return entries_ != nullptr; }

  std::string str(const std::string& key, const std::string& fallback) {
    seen_.insert(key);
    if (!entries_) return fallback;
    const Entry* last = nullptr;
    for (const auto& e : *entries_) {
      if (e.key == key) last = &e;
    }
    return last ? last->value : fallback;
  }

  double num(const std::string& key, double fallback) {
    const std::string v = str(key, "");
    if (v.empty()) return fallback;
    try {
      std::size_t pos = 0;
      const double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw ConfigError("config [" + name_ + "] " + key + ": not a number: '" + v + "'");
    }
  }

  std::uint64_t u64(const std::string& key, std::uint64_t fallback) {
    const std::string v = str(key, "");
    if (v.empty()) return fallback;
    try {
      return std::stoull(v);
    } catch (const std::exception&) {
      throw ConfigError("config [" + name_ + "] " + key + ": not an unsigned integer: '" + v + "'");
    }
  }

  bool flag(const std::string& key, bool fallback) {
    const std::string v = str(key, "");
    if (v.empty()) return fallback;
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config [" + name_ + "] " + key + ": expected true/false");
  }

  std::vector<std::string> repeated(const std::string& key) {
    seen_.insert(key);
    std::vector<std::string> out;
    if (!entries_) return out;
    for (const auto& e : *entries_) {
      if (e.key == key) out.push_back(e.value);
    }
    return out;
  }

  std::vector<double> num_list(const std::string& key, std::vector<double> fallback) {
    const std::string v = str(key, "");
    if (v.empty()) return fallback;
    std::vector<double> out;
    std::istringstream ss(v);
    std::string tok;
    while (ss >> tok) {
      try {
        out.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ConfigError("config [" + name_ + "] " + key + ": not a number: '" + tok + "'");
      }
    }
    return out;
  }

  std::vector<std::string> str_list(const std::string& key,
                                    std::vector<std::string> fallback) {
    const std::string v = str(key, "");
    if (v.empty()) return fallback;
    std::vector<std::string> out;
    std::istringstream ss(v);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
  }

  void reject_unknown() const {
    if (!entries_) return;
    for (const auto& e : *entries_) {
      if (!seen_.count(e.key)) {
        throw ConfigError("config [" + name_ + "] line " + std::to_string(e.line) +
                          ": unknown key '" + e.key + "'");
      }
    }
  }

 private:
  std::string name_;
  const std::vector<Entry>* entries_ = nullptr;
  std::set<std::string> seen_;
};

SignalSpec read_signal(SectionReader& sec) {
  SignalSpec spec;
  spec.normalized = sec.flag("normalized", false);
  for (const std::string& line : sec.repeated("component")) {
    std::istringstream ss(line);
    SignalComponent c;
    if (!(ss >> c.amplitude >> c.freq_mhz)) {
      throw ConfigError("config [signal] component: expected 'amplitude freq_MHz [phase_rad]'");
    }
    ss >> c.phase_rad;
    spec.components.push_back(c);
  }
  if (spec.components.empty()) {
    throw ConfigError("config [signal]: at least one 'component = A nu phi' line required");
  }
  spec.validate();
  return spec;
}

NoiseSpec read_noise(SectionReader& sec) {
  const std::string kind = sec.str("kind", "parametric");
  const std::string sidedness = sec.str("sidedness", "one_sided");
  if (sidedness != "one_sided" && sidedness != "two_sided") {
    throw ConfigError("config [noise] sidedness: expected one_sided|two_sided");
  }
  auto fold = [&](NoiseSpec n) {
    return sidedness == "two_sided" ? n.folded_from_two_sided() : n;
  };
  if (kind == "none") {
    sec.reject_unknown();
    return NoiseSpec::none();
  }
  if (kind == "parametric") {
    const double S0 = sec.num("S0_MHz", 0.0);
    const double A = sec.num("A_MHz", 0.0);
    const double nuL = sec.num("nu_L_MHz", 0.0);
    const double sig = sec.num("sigma_nu_MHz", 0.0);
    const double wmax = sec.num("omega_max_rad_us", 0.0);
    return fold(NoiseSpec::parametric(S0, A, nuL, sig, wmax > 0.0 ? wmax : -1.0));
  }
  if (kind == "tabulated") {
    const std::string path = sec.str("table_csv", "");
    if (path.empty()) throw ConfigError("config [noise]: tabulated kind needs table_csv");
    const std::string unit = sec.str("table_freq_unit", "rad_us");
    return fold(load_nsd_csv(path, unit));
  }
  if (kind == "tabulated_inline") {  // canonical form of a tabulated spectrum
    const std::string rows = sec.str("table", "");
    std::vector<double> w, S;
    std::istringstream ss(rows);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (cell.empty()) continue;
      const auto colon = cell.find(':');
      if (colon == std::string::npos) {
        throw ConfigError("config [noise] table: expected omega:S pairs");
      }
      w.push_back(std::stod(cell.substr(0, colon)));
      S.push_back(std::stod(cell.substr(colon + 1)));
    }
    return fold(NoiseSpec::tabulated(std::move(w), std::move(S)));
  }
  throw ConfigError("config [noise] kind: expected parametric|tabulated|none, got '" + kind + "'");
}

AnnealSchedule read_schedule(SectionReader& sec, AnnealSchedule defaults) {
  defaults.steps = static_cast<long>(sec.num("steps", static_cast<double>(defaults.steps)));
  defaults.T0 = sec.num("T0", defaults.T0);
  defaults.alpha = sec.num("alpha", defaults.alpha);
  if (defaults.move_kind == MoveKind::unbiased) {
    defaults.K = sec.num("K", defaults.K);
  }
  defaults.validate();
  return defaults;
}

const std::set<std::string> kMethods = {"sm", "sign_sm", "sign_sm_sa", "sa", "cp", "gcp"};

void append_kv(std::string& out, const std::string& key, const std::string& value) {
  out += key;
  out += " = ";
  out += value;
  out += "\n";
}

std::string noise_canonical(const NoiseSpec& n) {
  std::string out;
  if (n.kind == NoiseSpec::Kind::parametric) {
    append_kv(out, "kind", "parametric");
    append_kv(out, "S0_MHz", format_g17(n.S0));
    append_kv(out, "A_MHz", format_g17(n.A));
    append_kv(out, "nu_L_MHz", format_g17(n.nu_L));
    append_kv(out, "sigma_nu_MHz", format_g17(n.sigma_nu));
    append_kv(out, "omega_max_rad_us", format_g17(n.omega_max));
  } else {
    append_kv(out, "kind", "tabulated_inline");
    std::string rows;
    for (std::size_t i = 0; i < n.omega_tab.size(); ++i) {
      rows += format_g17(n.omega_tab[i]) + ":" + format_g17(n.S_tab[i]) + ",";
    }
    append_kv(out, "table", rows);
  }
  return out;
}

std::string schedule_canonical(const char* name, const AnnealSchedule& s, bool with_k) {
  std::string out = "[";
  out += name;
  out += "]\n";
  append_kv(out, "steps", std::to_string(s.steps));
  append_kv(out, "T0", format_g17(s.T0));
  append_kv(out, "alpha", format_g17(s.alpha));
  if (with_k) append_kv(out, "K", format_g17(s.K));
  return out;
}

}  // namespace

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

AnnealSchedule default_unbiased_schedule() {
  AnnealSchedule s;
  s.steps = 100000;
  s.T0 = 1.0;
  s.alpha = 0.3;  // calibrated against the exact-minimum benchmark
  s.K = 0.0;
  s.move_kind = MoveKind::unbiased;
  return s;
}

AnnealSchedule default_domain_wall_schedule() {
  AnnealSchedule s;
  s.steps = 1000;
  s.T0 = 0.1;  // the seed is already near-optimal; stay close and descend
  s.alpha = 2.0;
  s.K = 0.0;
  s.move_kind = MoveKind::domain_wall;
  return s;
}

NoiseSpec load_nsd_csv(const std::string& path, const std::string& freq_unit) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open NSD table: " + path);
  double scale;
  if (freq_unit == "rad_us") {
    scale = 1.0;
  } else if (freq_unit == "MHz") {
    scale = 2.0 * 3.14159265358979323846;
  } else {
    throw ConfigError("NSD table frequency unit must be rad_us or MHz, got '" + freq_unit + "'");
  }
  std::vector<double> w, S;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a, b;
    if (!(ss >> a >> b)) {
      if (lineno == 1) continue;  // header row
      throw ConfigError("NSD table " + path + " line " + std::to_string(lineno) +
                        ": expected two numeric columns");
    }
    w.push_back(a * scale);
    S.push_back(b);
  }
  return NoiseSpec::tabulated(std::move(w), std::move(S));
}

RunConfig parse_run_config(const std::string& text) {
  const Sections sections = parse_sections(text);
  for (const auto& [name, _] : sections) {
    static const std::set<std::string> known = {"grid", "signal", "noise", "run",
                                                "anneal_unbiased", "anneal_domain_wall"};
    if (!known.count(name)) throw ConfigError("config: unknown section [" + name + "]");
  }
  RunConfig cfg;

  SectionReader grid_sec(sections, "grid");
  if (!grid_sec.present()) throw ConfigError("config: missing [grid] section");
  const double T = grid_sec.num("T_us", 0.0);
  const double dt = grid_sec.num("dt_us", 0.0);
  cfg.grid = Grid::make(T, dt);
  grid_sec.reject_unknown();

  SectionReader sig_sec(sections, "signal");
  if (!sig_sec.present()) throw ConfigError("config: missing [signal] section");
  cfg.signal = read_signal(sig_sec);
  sig_sec.reject_unknown();

  SectionReader noise_sec(sections, "noise");
  cfg.noise = noise_sec.present() ? read_noise(noise_sec) : NoiseSpec::none();
  noise_sec.reject_unknown();

  SectionReader run_sec(sections, "run");
  cfg.method = run_sec.str("method", "sign_sm_sa");
  if (!kMethods.count(cfg.method)) {
    throw ConfigError("config [run] method: unknown method '" + cfg.method + "'");
  }
  cfg.seed = run_sec.u64("seed", 1);
  cfg.gamma = run_sec.num("gamma_rad_per_us_field", kDefaultGamma);
  if (!(cfg.gamma > 0.0)) throw ConfigError("config [run] gamma must be > 0");
  cfg.cp_n = static_cast<int>(run_sec.num("cp_n", 0.0));
  cfg.cp_tau_us = run_sec.num("cp_tau_us", 0.0);
  const std::string diag = run_sec.str("diagonalization", "exact");
  if (diag == "exact") {
    cfg.diag_mode = DiagMode::exact;
  } else if (diag == "circulant") {
    cfg.diag_mode = DiagMode::circulant;
  } else {
    throw ConfigError("config [run] diagonalization: expected exact|circulant");
  }
  cfg.quad_rel_tol = run_sec.num("quad_rel_tol", 1e-8);
  if (cfg.method == "cp" && (cfg.cp_n < 1 || !(cfg.cp_tau_us > 0.0))) {
    throw ConfigError("config [run]: method cp requires cp_n >= 1 and cp_tau_us > 0");
  }
  run_sec.reject_unknown();

  SectionReader su(sections, "anneal_unbiased");
  cfg.sched_unbiased = read_schedule(su, default_unbiased_schedule());
  su.reject_unknown();
  SectionReader sd(sections, "anneal_domain_wall");
  cfg.sched_domain_wall = read_schedule(sd, default_domain_wall_schedule());
  sd.reject_unknown();

  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_run_config(ss.str());
}

std::string RunConfig::canonical() const {
  std::string out = "[grid]\n";
  append_kv(out, "T_us", format_g17(grid.T));
  append_kv(out, "dt_us", format_g17(grid.dt));
  out += "[signal]\n";
  append_kv(out, "normalized", signal.normalized ? "true" : "false");
  for (const auto& c : signal.components) {
    append_kv(out, "component", format_g17(c.amplitude) + " " + format_g17(c.freq_mhz) +
                                  " " + format_g17(c.phase_rad));
  }
  out += "[noise]\n";
  out += noise_canonical(noise);
  out += "[run]\n";
  append_kv(out, "method", method);
  append_kv(out, "seed", std::to_string(seed));
  append_kv(out, "gamma_rad_per_us_field", format_g17(gamma));
  append_kv(out, "cp_n", std::to_string(cp_n));
  append_kv(out, "cp_tau_us", format_g17(cp_tau_us));
  append_kv(out, "diagonalization", diag_mode == DiagMode::exact ? "exact" : "circulant");
  append_kv(out, "quad_rel_tol", format_g17(quad_rel_tol));
  out += schedule_canonical("anneal_unbiased", sched_unbiased, true);
  out += schedule_canonical("anneal_domain_wall", sched_domain_wall, false);
  return out;
}

std::string RunConfig::sha256() const { return sha256_hex(canonical()); }

EnsembleSpec parse_ensemble_spec(const std::string& text) {
  const Sections sections = parse_sections(text);
  for (const auto& [name, _] : sections) {
    static const std::set<std::string> known = {"ensemble", "anneal_unbiased",
                                                "anneal_domain_wall", "run"};
    if (!known.count(name)) {
      throw ConfigError("ensemble config: unknown section [" + name + "]");
    }
  }
  EnsembleSpec spec;
  SectionReader sec(sections, "ensemble");
  if (!sec.present()) throw ConfigError("config: missing [ensemble] section");
  spec.n_instances = static_cast<int>(sec.num("n_instances", 100));
  spec.n_freq = static_cast<int>(sec.num("n_freq", 7));
  spec.freq_min_mhz = sec.num("freq_min_MHz", 0.0);
  spec.freq_max_mhz = sec.num("freq_max_MHz", 1.0);
  const double s0 = sec.num("noise_S0_MHz", 0.0);
  const double a = sec.num("noise_A_MHz", 1.0);
  const double nul = sec.num("noise_nu_L_MHz", 0.4316);
  const double sig = sec.num("noise_sigma_nu_MHz", 0.016);
  spec.noise = NoiseSpec::parametric(s0, a, nul, sig);
  spec.dt_us = sec.num("dt_us", 0.1);
  spec.T_list_us = sec.num_list("T_list_us", {20.0, 40.0, 60.0, 80.0, 100.0});
  spec.methods = sec.str_list("methods", {"gcp", "sign_sm", "sign_sm_sa"});
  spec.master_seed = sec.u64("master_seed", 1);
  sec.reject_unknown();

  if (spec.n_instances < 1) throw ConfigError("ensemble: n_instances must be >= 1");
  if (spec.n_freq < 1) throw ConfigError("ensemble: n_freq must be >= 1");
  if (!(spec.freq_max_mhz > spec.freq_min_mhz) || spec.freq_min_mhz < 0.0) {
    throw ConfigError("ensemble: need 0 <= freq_min < freq_max");
  }
  for (const auto& m : spec.methods) {
    if (!kMethods.count(m) || m == "cp" || m == "sm") {
      throw ConfigError("ensemble: method '" + m + "' is not available in ensembles");
    }
  }

  SectionReader ru(sections, "run");
  spec.gamma = ru.num("gamma_rad_per_us_field", kDefaultGamma);
  ru.reject_unknown();
  SectionReader su(sections, "anneal_unbiased");
  spec.sched_unbiased = read_schedule(su, default_unbiased_schedule());
  su.reject_unknown();
  SectionReader sd(sections, "anneal_domain_wall");
  spec.sched_domain_wall = read_schedule(sd, default_domain_wall_schedule());
  sd.reject_unknown();
  return spec;
}

EnsembleSpec load_ensemble_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_ensemble_spec(ss.str());
}

std::string EnsembleSpec::canonical() const {
  std::string out = "[ensemble]\n";
  append_kv(out, "n_instances", std::to_string(n_instances));
  append_kv(out, "n_freq", std::to_string(n_freq));
  append_kv(out, "freq_min_MHz", format_g17(freq_min_mhz));
  append_kv(out, "freq_max_MHz", format_g17(freq_max_mhz));
  append_kv(out, "noise_S0_MHz", format_g17(noise.S0));
  append_kv(out, "noise_A_MHz", format_g17(noise.A));
  append_kv(out, "noise_nu_L_MHz", format_g17(noise.nu_L));
  append_kv(out, "noise_sigma_nu_MHz", format_g17(noise.sigma_nu));
  append_kv(out, "dt_us", format_g17(dt_us));
  std::string tlist;
  for (double t : T_list_us) tlist += format_g17(t) + " ";
  append_kv(out, "T_list_us", tlist);
  std::string ms;
  for (const auto& m : methods) ms += m + " ";
  append_kv(out, "methods", ms);
  append_kv(out, "master_seed", std::to_string(master_seed));
  out += "[run]\n";
  append_kv(out, "gamma_rad_per_us_field", format_g17(gamma));
  out += schedule_canonical("anneal_unbiased", sched_unbiased, true);
  out += schedule_canonical("anneal_domain_wall", sched_domain_wall, false);
  return out;
}

std::string EnsembleSpec::sha256() const { return sha256_hex(canonical()); }

}  // namespace ddopt
