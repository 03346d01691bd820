#include "ddopt/anneal.hpp"

#include <cmath>
#include <limits>

#include "ddopt/errors.hpp"
#include "ddopt/rng.hpp"

namespace ddopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double AnnealSchedule::temperature(long step) const {
  return T0 * std::pow(1.0 + static_cast<double>(step), -alpha);
}

void AnnealSchedule::validate() const {
  if (steps < 1) throw ConfigError("anneal: steps must be >= 1");
  if (!(T0 > 0.0)) throw ConfigError("anneal: T0 must be > 0");
  if (!(alpha > 0.0)) throw ConfigError("anneal: alpha must be > 0");
  if (K < 0.0) throw ConfigError("anneal: K must be >= 0");
}

void IsingState::DynamicSet::init(int n) {
  members.clear();
  pos.assign(static_cast<std::size_t>(n), -1);
}

void IsingState::DynamicSet::add(int i) {
  if (pos[static_cast<std::size_t>(i)] >= 0) return;
  pos[static_cast<std::size_t>(i)] = static_cast<int>(members.size());
  members.push_back(i);
}

void IsingState::DynamicSet::remove(int i) {
  const int p = pos[static_cast<std::size_t>(i)];
  if (p < 0) return;
  const int last = members.back();
  members[static_cast<std::size_t>(p)] = last;
  pos[static_cast<std::size_t>(last)] = p;
  members.pop_back();
  pos[static_cast<std::size_t>(i)] = -1;
}

IsingState::IsingState(SpinSequence seq, const std::vector<double>& h,
                       const CouplingMatrix& J, double K)
    : seq_(std::move(seq)), h_(h), J_(J), K_(K) {
  seq_.validate();
  if (h.size() != seq_.s.size() || J.size() != seq_.size()) {
    throw ConfigError("ising: h, J and sequence sizes must agree");
  }
  f_.assign(seq_.s.size(), 0.0);
  flippable_.init(seq_.size());
  refresh();
}

bool IsingState::wall_at(int bond) const {
  return seq_.s[static_cast<std::size_t>(bond)] != seq_.s[static_cast<std::size_t>(bond + 1)];
}

void IsingState::update_flippable(int i) {
  const int n = seq_.size();
  if (i < 0 || i >= n) return;
  const bool left = (i > 0) && wall_at(i - 1);
  const bool right = (i < n - 1) && wall_at(i);
  if (left || right) {
    flippable_.add(i);
  } else {
    flippable_.remove(i);
  }
}

void IsingState::refresh() {
  const int n = seq_.size();
  const auto& h = h_;
  const auto& J = J_;
  m_ = 0.0;
  kterm_ = 0.0;
  wall_count_ = 0;
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += J(i, j) * static_cast<double>(seq_.s[static_cast<std::size_t>(j)]);
    }
    f_[static_cast<std::size_t>(i)] = acc;
    m_ += h[static_cast<std::size_t>(i)] * static_cast<double>(seq_.s[static_cast<std::size_t>(i)]);
  }
  chi_ = 0.0;
  for (int i = 0; i < n; ++i) {
    chi_ += static_cast<double>(seq_.s[static_cast<std::size_t>(i)]) * f_[static_cast<std::size_t>(i)];
  }
  chi_ *= 0.5;
  for (int i = 0; i + 1 < n; ++i) {
    kterm_ += static_cast<double>(seq_.s[static_cast<std::size_t>(i)]) *
              static_cast<double>(seq_.s[static_cast<std::size_t>(i + 1)]);
    if (wall_at(i)) ++wall_count_;
  }
  flippable_.init(n);
  for (int i = 0; i < n; ++i) update_flippable(i);
}

double IsingState::energy() const {
  if (m_ == 0.0) return kInf;
  return chi_ - std::log(std::abs(m_)) - K_ * kterm_;
}

double IsingState::delta_energy(int i) const {
  const double s = static_cast<double>(seq_.s[static_cast<std::size_t>(i)]);
  const int n = seq_.size();
  const double j0 = J_(0, 0);
  double d = -2.0 * s * f_[static_cast<std::size_t>(i)] + 2.0 * j0;
  if (K_ != 0.0) {
    double nb = 0.0;
    if (i > 0) nb += static_cast<double>(seq_.s[static_cast<std::size_t>(i - 1)]);
    if (i < n - 1) nb += static_cast<double>(seq_.s[static_cast<std::size_t>(i + 1)]);
    d += 2.0 * K_ * s * nb;
  }
  const double m_new = m_ - 2.0 * h_[static_cast<std::size_t>(i)] * s;
  if (m_ == 0.0) return (m_new == 0.0) ? kInf : -kInf;
  if (m_new == 0.0) return kInf;
  return d + std::log(std::abs(m_)) - std::log(std::abs(m_new));
}

void IsingState::flip(int i) {
  const auto& J = J_;
  const int n = seq_.size();
  const double s_old = static_cast<double>(seq_.s[static_cast<std::size_t>(i)]);
  chi_ += -2.0 * s_old * f_[static_cast<std::size_t>(i)] + 2.0 * J(0, 0);
  m_ -= 2.0 * h_[static_cast<std::size_t>(i)] * s_old;
  double nb = 0.0;
  if (i > 0) {
    nb += static_cast<double>(seq_.s[static_cast<std::size_t>(i - 1)]);
    wall_count_ += wall_at(i - 1) ? -1 : 1;
  }
  if (i < n - 1) {
    nb += static_cast<double>(seq_.s[static_cast<std::size_t>(i + 1)]);
    wall_count_ += wall_at(i) ? -1 : 1;
  }
  kterm_ -= 2.0 * s_old * nb;
  seq_.s[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(-seq_.s[static_cast<std::size_t>(i)]);
  const double ds = -2.0 * s_old;
  for (int l = 0; l < n; ++l) {
    f_[static_cast<std::size_t>(l)] += J(l, i) * ds;
  }
  update_flippable(i - 1);
  update_flippable(i);
  update_flippable(i + 1);
  if (++flips_ % kRefreshInterval == 0) refresh();
}

std::vector<int> IsingState::wall_indices() const {
  std::vector<int> walls;
  for (int i = 0; i + 1 < seq_.size(); ++i) {
    if (wall_at(i)) walls.push_back(i);
  }
  return walls;
}

namespace {

struct Tracer {
  long stride;
  std::vector<TracePoint>* out;
  void maybe_record(long step, double temp, double cur, double best) {
    if (step % stride == 0) out->push_back({step, temp, cur, best});
  }
};

AnnealResult run_metropolis(IsingState& state, const AnnealSchedule& schedule,
                            bool domain_wall) {
  AnnealResult result;
  result.seed = schedule.seed;
  std::mt19937_64 rng(schedule.seed);

  SpinSequence best_seq = state.sequence();
  double best_e = state.energy();

  const long stride = schedule.trace_stride > 0
                          ? schedule.trace_stride
                          : std::max<long>(1, schedule.steps / 10000);
  Tracer tracer{stride, &result.trace};
  tracer.maybe_record(0, schedule.temperature(0), state.energy(), best_e);

  const int n = state.sequence().size();
  for (long step = 0; step < schedule.steps; ++step) {
    const double temp = schedule.temperature(step);
    int site;
    if (domain_wall) {
      const auto& movable = state.wall_adjacent_spins();
      if (movable.empty()) break;  // uniform state: no admissible moves remain
      site = movable[uniform_index(rng, movable.size())];
    } else {
      site = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    }
    const double d = state.delta_energy(site);
    bool accept;
    if (d == kInf || std::isnan(d)) {
      accept = false;
    } else if (d <= 0.0) {
      accept = true;
    } else {
      accept = uniform01(rng) < std::exp(-d / temp);
    }
    if (accept) {
      state.flip(site);
      ++result.accepted;
      const double e = state.energy();
      if (e < best_e) {
        best_e = e;
        best_seq = state.sequence();
      }
    }
    tracer.maybe_record(step + 1, temp, state.energy(), best_e);
  }

  result.best = std::move(best_seq);
  result.best_epsilon = best_e;
  return result;
}

}  // namespace

AnnealResult anneal_unbiased(const std::vector<double>& h, const CouplingMatrix& J,
                             const Grid& grid, const AnnealSchedule& schedule) {
  schedule.validate();
  if (schedule.move_kind != MoveKind::unbiased) {
    throw ConfigError("anneal_unbiased: schedule.move_kind must be 'unbiased'");
  }
  std::mt19937_64 seeder(schedule.seed);
  SpinSequence seq;
  seq.grid = grid;
  seq.s.resize(static_cast<std::size_t>(grid.N));
  for (auto& v : seq.s) v = (seeder() & 1u) ? 1 : -1;

  AnnealSchedule inner = schedule;
  inner.seed = seeder();  // keep the init draw and the walk independent
  IsingState state(std::move(seq), h, J, schedule.K);
  AnnealResult result = run_metropolis(state, inner, /*domain_wall=*/false);
  result.seed = schedule.seed;
  return result;
}

AnnealResult anneal_domain_wall(const SpinSequence& seed_state,
                                const std::vector<double>& h, const CouplingMatrix& J,
                                const AnnealSchedule& schedule) {
  schedule.validate();
  if (schedule.move_kind != MoveKind::domain_wall) {
    throw ConfigError("anneal_domain_wall: schedule.move_kind must be 'domain_wall'");
  }
  if (schedule.K != 0.0) {
    throw ConfigError("anneal_domain_wall: the ferromagnetic K term applies only to unbiased SA");
  }
  IsingState state(seed_state, h, J, 0.0);
  if (state.wall_count() == 0) {
    AnnealResult result;
    result.best = seed_state;
    result.best_epsilon = state.energy();
    result.no_moves = true;
    result.seed = schedule.seed;
    result.trace.push_back({0, schedule.temperature(0), result.best_epsilon,
                            result.best_epsilon});
    return result;
  }
  return run_metropolis(state, schedule, /*domain_wall=*/true);
}

}  // namespace ddopt
