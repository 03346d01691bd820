#ifndef DDOPT_ORACLE_HPP
#define DDOPT_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "ddopt/coupling.hpp"
#include "ddopt/sequences.hpp"

namespace ddopt {

// Reference implementations for tests: deliberately naive, sharing nothing with
// the incremental Ising engine beyond the type definitions.

// Direct double-loop evaluation of epsilon_K = 1/2 s^T J s - log|h.s| - K sum s_i s_{i+1}.
double naive_energy(const SpinSequence& seq, const std::vector<double>& h,
                    const CouplingMatrix& J, double K = 0.0);

struct BruteForceResult {
  SpinSequence best;
  double best_epsilon = 0.0;
  std::uint64_t evaluated_count = 0;  // 2^{N-1}; global-flip symmetry halves the search
};

// Exact hypercube minimum of epsilon (K = 0 unless given) for N <= 20, evaluating
// every representative with the naive O(N^2) energy.
BruteForceResult brute_force_min(const std::vector<double>& h, const CouplingMatrix& J,
                                 const Grid& grid, double K = 0.0);

}  // namespace ddopt

#endif
