#ifndef DDOPT_ANNEAL_HPP
#define DDOPT_ANNEAL_HPP

#include <cstdint>
#include <vector>

#include "ddopt/coupling.hpp"
#include "ddopt/sequences.hpp"

namespace ddopt {

enum class MoveKind { unbiased, domain_wall };

// Power-law temperature ramp T(m) = T0 * (1+m)^-alpha over `steps` Metropolis moves.
// K is the ferromagnetic coupling -K sum_i s_i s_{i+1} that suppresses pulse count
// in unbiased runs (domain-wall runs require K = 0).
struct AnnealSchedule {
  long steps = 100000;
  double T0 = 1.0;
  double alpha = 1.0;
  double K = 0.0;
  std::uint64_t seed = 0;
  MoveKind move_kind = MoveKind::unbiased;
  long trace_stride = 0;  // 0: pick automatically (~1e4 trace rows)

  double temperature(long step) const;
  void validate() const;
};

// Ising configuration with O(1) incremental energy bookkeeping: cached overlap
// m = sum h_i s_i, local fields f_i = sum_j J_ij s_j, chi, ferromagnetic bond sum,
// and the set of spins adjacent to a domain wall. Caches are refreshed from
// scratch every 1000 flips to bound floating-point drift.
class IsingState {
 public:
  IsingState(SpinSequence seq, const std::vector<double>& h, const CouplingMatrix& J,
             double K);

  double energy() const;  // epsilon_K; +inf when the overlap vanishes
  double delta_energy(int i) const;
  void flip(int i);
  void refresh();

  const SpinSequence& sequence() const { return seq_; }
  double overlap() const { return m_; }
  double chi() const { return chi_; }
  double ferro_sum() const { return kterm_; }
  int wall_count() const { return wall_count_; }
  std::vector<int> wall_indices() const;  // bonds i with s_i != s_{i+1}
  const std::vector<int>& wall_adjacent_spins() const { return flippable_.members; }
  bool is_wall_adjacent(int i) const { return flippable_.pos[static_cast<std::size_t>(i)] >= 0; }

 private:
  struct DynamicSet {
    std::vector<int> members;
    std::vector<int> pos;  // index in members, or -1
    void init(int n);
    void add(int i);
    void remove(int i);
    bool contains(int i) const { return pos[static_cast<std::size_t>(i)] >= 0; }
  };

  bool wall_at(int bond) const;  // bond between spins `bond` and `bond+1`
  void update_flippable(int i);

  SpinSequence seq_;
  std::vector<double> h_;
  CouplingMatrix J_;
  double K_;
  std::vector<double> f_;
  double m_ = 0.0;
  double chi_ = 0.0;
  double kterm_ = 0.0;
  int wall_count_ = 0;
  DynamicSet flippable_;
  long flips_ = 0;
  static constexpr long kRefreshInterval = 1000;
};

struct TracePoint {
  long step;
  double temperature;
  double epsilon;
  double best_epsilon;
};

struct AnnealResult {
  SpinSequence best;
  double best_epsilon = 0.0;  // epsilon_K of the best-seen state
  std::vector<TracePoint> trace;
  long accepted = 0;
  bool no_moves = false;  // domain-wall run with an immobile seed
  std::uint64_t seed = 0;
};

// Unbiased SA: uniform single-spin proposals from a uniformly random start,
// Metropolis acceptance min(1, e^{-dE/T}); infinite-dE moves always rejected.
// Returns the best-seen state. Deterministic for a fixed seed.
AnnealResult anneal_unbiased(const std::vector<double>& h, const CouplingMatrix& J,
                             const Grid& grid, const AnnealSchedule& schedule);

// Domain-wall-restricted SA from a seed state: proposals uniform over spins
// adjacent to a wall (boundary spins included when next to a wall), so the wall
// count never increases. K must be zero.
AnnealResult anneal_domain_wall(const SpinSequence& seed_state,
                                const std::vector<double>& h, const CouplingMatrix& J,
                                const AnnealSchedule& schedule);

}  // namespace ddopt

#endif
