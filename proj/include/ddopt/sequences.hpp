#ifndef DDOPT_SEQUENCES_HPP
#define DDOPT_SEQUENCES_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ddopt/grid.hpp"
#include "ddopt/signal.hpp"

namespace ddopt {

// Modulation function on the grid: s[i] = +/-1 is the sign of phase accumulation
// over cell i. Domain walls (s[i] != s[i+1]) are pi-pulse locations.
struct SpinSequence {
  std::vector<std::int8_t> s;
  Grid grid;

  int size() const { return static_cast<int>(s.size()); }
  void validate() const;
  int pulse_count() const;  // number of domain walls
};

// Physical pi-pulse times in (0, T), strictly increasing, plus provenance metadata
// (method, seed, config_sha256, ...) carried into the pulse file header.
struct PulseSequence {
  std::vector<double> times_us;
  double T_us = 0.0;
  std::map<std::string, std::string> metadata;
};

// Equidistant (Carr-Purcell style) sequence: n pulses at t_k = (k - 1/2) tau,
// snapped to the nearest grid wall. Requires n*tau = T within dt/2.
SpinSequence cp_sequence(int n_pulses, double tau_us, const Grid& grid);

// Sign-of-signal sequence: s_i = sign(h(t)) sampled at cell midpoints, sign(0) = +1.
SpinSequence gcp_sequence(const SignalSpec& spec, const Grid& grid);

PulseSequence extract_pulses(const SpinSequence& seq,
                             std::map<std::string, std::string> metadata = {});
SpinSequence embed_pulses(const PulseSequence& pulses, const Grid& grid);

// Pulse file: UTF-8 text, '# key=value' header lines, then one pulse time per
// line with fixed 9-decimal formatting. The handoff artifact to lab control.
void write_pulse_file(std::ostream& out, const PulseSequence& pulses, const Grid& grid);
void write_pulse_file(const std::string& path, const PulseSequence& pulses,
                      const Grid& grid);
PulseSequence read_pulse_file(std::istream& in);
PulseSequence read_pulse_file(const std::string& path);

}  // namespace ddopt

#endif
