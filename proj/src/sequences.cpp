#include "ddopt/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ddopt/errors.hpp"

namespace ddopt {

namespace {

std::string fixed9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", x);
  return buf;
}

}  // namespace

void SpinSequence::validate() const {
  if (static_cast<int>(s.size()) != grid.N) {
    throw ConfigError("sequence: length does not match the grid");
  }
  for (auto v : s) {
    if (v != 1 && v != -1) throw ConfigError("sequence: entries must be +/-1");
  }
}

int SpinSequence::pulse_count() const {
  int walls = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] != s[i + 1]) ++walls;
  }
  return walls;
}

SpinSequence cp_sequence(int n_pulses, double tau_us, const Grid& grid) {
  if (n_pulses < 1) throw ConfigError("cp: need at least one pulse");
  if (std::abs(n_pulses * tau_us - grid.T) > 0.5 * grid.dt) {
    throw ConfigError("cp: n*tau must equal T within dt/2");
  }
  std::vector<int> walls;
  walls.reserve(static_cast<std::size_t>(n_pulses));
  for (int k = 1; k <= n_pulses; ++k) {
    const double ideal = (k - 0.5) * tau_us;
    const int w = static_cast<int>(std::llround(ideal / grid.dt));
    if (w < 1 || w > grid.N - 1 || (!walls.empty() && w <= walls.back())) {
      // the half-period tau/2 must land on a wall; report the coarsest dt that fits
      const int m = std::max(1, static_cast<int>(std::ceil(tau_us / (2.0 * grid.dt))));
      throw ConfigError("cp: tau = " + std::to_string(tau_us) +
                        " us is not representable on this grid; smallest compatible dt = " +
                        std::to_string(tau_us / (2.0 * m)) + " us");
    }
    walls.push_back(w);
  }
  SpinSequence seq;
  seq.grid = grid;
  seq.s.assign(static_cast<std::size_t>(grid.N), 1);
  std::int8_t cur = 1;
  std::size_t next_wall = 0;
  for (int i = 0; i < grid.N; ++i) {
    if (next_wall < walls.size() && i == walls[next_wall]) {
      cur = static_cast<std::int8_t>(-cur);
      ++next_wall;
    }
    seq.s[static_cast<std::size_t>(i)] = cur;
  }
  return seq;
}

SpinSequence gcp_sequence(const SignalSpec& spec, const Grid& grid) {
  spec.validate();
  SpinSequence seq;
  seq.grid = grid;
  seq.s.assign(static_cast<std::size_t>(grid.N), 1);
  for (int i = 0; i < grid.N; ++i) {
    const double h = spec.value(grid.cell_mid(i));
    seq.s[static_cast<std::size_t>(i)] = (h < 0.0) ? -1 : 1;
  }
  return seq;
}

PulseSequence extract_pulses(const SpinSequence& seq,
                             std::map<std::string, std::string> metadata) {
  seq.validate();
  PulseSequence p;
  p.T_us = seq.grid.T;
  p.metadata = std::move(metadata);
  for (int i = 0; i + 1 < seq.size(); ++i) {
    if (seq.s[static_cast<std::size_t>(i)] != seq.s[static_cast<std::size_t>(i + 1)]) {
      p.times_us.push_back((i + 1) * seq.grid.dt);
    }
  }
  return p;
}

SpinSequence embed_pulses(const PulseSequence& pulses, const Grid& grid) {
  if (std::abs(pulses.T_us - grid.T) > 1e-9 * grid.T) {
    throw ConfigError("embed: pulse list T does not match the grid");
  }
  std::vector<int> walls;
  walls.reserve(pulses.times_us.size());
  for (double t : pulses.times_us) {
    const int w = static_cast<int>(std::llround(t / grid.dt));
    if (std::abs(w * grid.dt - t) > 1e-7 || w < 1 || w > grid.N - 1) {
      throw ConfigError("embed: pulse time " + fixed9(t) + " us is not on the grid");
    }
    if (!walls.empty() && w <= walls.back()) {
      throw ConfigError("embed: pulse times must be strictly increasing");
    }
    walls.push_back(w);
  }
  SpinSequence seq;
  seq.grid = grid;
  seq.s.assign(static_cast<std::size_t>(grid.N), 1);
  std::int8_t cur = 1;  // global sign fixed by s_1 = +1
  std::size_t next_wall = 0;
  for (int i = 0; i < grid.N; ++i) {
    if (next_wall < walls.size() && i == walls[next_wall]) {
      cur = static_cast<std::int8_t>(-cur);
      ++next_wall;
    }
    seq.s[static_cast<std::size_t>(i)] = cur;
  }
  return seq;
}

void write_pulse_file(std::ostream& out, const PulseSequence& pulses, const Grid& grid) {
  auto get = [&](const std::string& key) {
    auto it = pulses.metadata.find(key);
    return it == pulses.metadata.end() ? std::string("unknown") : it->second;
  };
  out << "# T_us=" << fixed9(grid.T) << "\n";
  out << "# dt_us=" << fixed9(grid.dt) << "\n";
  out << "# N=" << grid.N << "\n";
  out << "# method=" << get("method") << "\n";
  out << "# seed=" << get("seed") << "\n";
  out << "# config_sha256=" << get("config_sha256") << "\n";
  for (const auto& [key, value] : pulses.metadata) {
    if (key == "method" || key == "seed" || key == "config_sha256") continue;
    out << "# " << key << "=" << value << "\n";
  }
  for (double t : pulses.times_us) out << fixed9(t) << "\n";
}

void write_pulse_file(const std::string& path, const PulseSequence& pulses,
                      const Grid& grid) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  write_pulse_file(f, pulses, grid);
  if (!f.good()) throw ConfigError("write failed: " + path);
}

PulseSequence read_pulse_file(std::istream& in) {
  PulseSequence p;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      std::string key = body.substr(0, eq);
      std::string value = body.substr(eq + 1);
      key.erase(0, key.find_first_not_of(" \t"));
      key.erase(key.find_last_not_of(" \t") + 1);
      p.metadata[key] = value;
      continue;
    }
    try {
      p.times_us.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw ConfigError("pulse file: bad value at line " + std::to_string(lineno));
    }
  }
  if (auto it = p.metadata.find("T_us"); it != p.metadata.end()) {
    p.T_us = std::stod(it->second);
  } else {
    throw ConfigError("pulse file: missing T_us header");
  }
  for (std::size_t i = 0; i < p.times_us.size(); ++i) {
    if (p.times_us[i] <= 0.0 || p.times_us[i] >= p.T_us) {
      throw ConfigError("pulse file: pulse time outside (0, T)");
    }
    if (i > 0 && p.times_us[i] <= p.times_us[i - 1]) {
      throw ConfigError("pulse file: times must be strictly increasing");
    }
  }
  return p;
}

PulseSequence read_pulse_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open pulse file: " + path);
  return read_pulse_file(f);
}

}  // namespace ddopt
