#include "ddopt/oracle.hpp"

#include <cmath>
#include <limits>

#include "ddopt/errors.hpp"

namespace ddopt {

double naive_energy(const SpinSequence& seq, const std::vector<double>& h,
                    const CouplingMatrix& J, double K) {
  seq.validate();
  if (h.size() != seq.s.size() || J.size() != seq.size()) {
    throw ConfigError("naive_energy: size mismatch");
  }
  const int n = seq.size();
  double chi = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      chi += J(i, j) * static_cast<double>(seq.s[static_cast<std::size_t>(i)]) *
             static_cast<double>(seq.s[static_cast<std::size_t>(j)]);
    }
  }
  chi *= 0.5;
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    m += h[static_cast<std::size_t>(i)] * static_cast<double>(seq.s[static_cast<std::size_t>(i)]);
  }
  double ferro = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    ferro += static_cast<double>(seq.s[static_cast<std::size_t>(i)]) *
             static_cast<double>(seq.s[static_cast<std::size_t>(i + 1)]);
  }
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return chi - std::log(std::abs(m)) - K * ferro;
}

BruteForceResult brute_force_min(const std::vector<double>& h, const CouplingMatrix& J,
                                 const Grid& grid, double K) {
  const int n = grid.N;
  if (n > 20) throw ConfigError("brute_force_min: N is capped at 20");
  if (static_cast<int>(h.size()) != n || J.size() != n) {
    throw ConfigError("brute_force_min: size mismatch");
  }

  SpinSequence seq;
  seq.grid = grid;
  seq.s.assign(static_cast<std::size_t>(n), 1);

  BruteForceResult out;
  out.best_epsilon = std::numeric_limits<double>::infinity();
  // fix s_0 = +1: epsilon is invariant under a global flip
  const std::uint64_t count = 1ull << (n - 1);
  for (std::uint64_t code = 0; code < count; ++code) {
    for (int i = 1; i < n; ++i) {
      seq.s[static_cast<std::size_t>(i)] = (code >> (i - 1)) & 1ull ? -1 : 1;
    }
    const double e = naive_energy(seq, h, J, K);
    if (e < out.best_epsilon) {
      out.best_epsilon = e;
      out.best = seq;
    }
  }
  out.evaluated_count = count;
  if (out.best.s.empty()) {
    out.best = seq;  // everything infinite; return the last representative
  }
  return out;
}

}  // namespace ddopt
