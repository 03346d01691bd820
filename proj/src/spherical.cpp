#include "ddopt/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ddopt/errors.hpp"

namespace ddopt {

namespace {

Eigen::MatrixXd dense_from_toeplitz(const CouplingMatrix& J) {
  const int n = J.size();
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      M(i, j) = J(i, j);
    }
  }
  return M;
}

// Q(u) = sum_k w_k / (gap_k + u) = h^T (J + lambda)^{-1} h  at u = lambda + mu_min
double q_sum(const std::vector<double>& gaps, const std::vector<double>& w, double u) {
  double q = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == 0.0) continue;  // degenerate modes contribute nothing
    q += w[k] / (gaps[k] + u);
  }
  return q;
}

// R(u) = sum_k w_k / (gap_k + u)^2; R/Q is the squared norm of the candidate y.
double r_sum(const std::vector<double>& gaps, const std::vector<double>& w, double u) {
  double r = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == 0.0) continue;
    const double d = gaps[k] + u;
    r += w[k] / (d * d);
  }
  return r;
}

double eps_of_u(const std::vector<double>& gaps, const std::vector<double>& w, int n,
                double mu_min, double u) {
  return 0.5 - 0.5 * n * (u - mu_min) - 0.5 * std::log(q_sum(gaps, w, u));
}

}  // namespace

Eigenbasis Eigenbasis::exact(const CouplingMatrix& J) {
  Eigenbasis b;
  b.mode_ = DiagMode::exact;
  b.n_ = J.size();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_from_toeplitz(J));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("diagonalize: eigendecomposition failed");
  }
  b.V_ = solver.eigenvectors();
  b.mu_.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + b.n_);
  b.mu_min_ = b.mu_.front();  // ascending
  b.gaps_.resize(b.mu_.size());
  for (std::size_t k = 0; k < b.mu_.size(); ++k) {
    b.gaps_[k] = std::max(0.0, b.mu_[k] - b.mu_min_);
  }
  return b;
}

Eigenbasis Eigenbasis::circulant(const CouplingMatrix& J) {
  Eigenbasis b;
  b.mode_ = DiagMode::circulant;
  b.n_ = J.size();
  const int n = b.n_;
  // circulant extension of the Toeplitz generator: c_j = r_min(j, n-j)
  std::vector<double> c(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    c[static_cast<std::size_t>(j)] = J.first_row[static_cast<std::size_t>(std::min(j, n - j))];
  }
  c[0] = J.first_row[0];
  b.mu_.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double v = 0.0;
    for (int j = 0; j < n; ++j) {
      v += c[static_cast<std::size_t>(j)] *
           std::cos(2.0 * std::numbers::pi * k * j / n);
    }
    b.mu_[static_cast<std::size_t>(k)] = v;
  }
  b.mu_min_ = *std::min_element(b.mu_.begin(), b.mu_.end());
  b.gaps_.resize(b.mu_.size());
  for (std::size_t k = 0; k < b.mu_.size(); ++k) {
    b.gaps_[k] = std::max(0.0, b.mu_[k] - b.mu_min_);
  }
  return b;
}

Eigenbasis::Projection Eigenbasis::project(const std::vector<double>& h) const {
  if (static_cast<int>(h.size()) != n_) {
    throw ConfigError("spherical: field vector size does not match the basis");
  }
  Projection p;
  p.weight.resize(static_cast<std::size_t>(n_));
  if (mode_ == DiagMode::exact) {
    Eigen::Map<const Eigen::VectorXd> hv(h.data(), n_);
    p.g = V_.transpose() * hv;
    for (int k = 0; k < n_; ++k) p.weight[static_cast<std::size_t>(k)] = p.g[k] * p.g[k];
  } else {
    p.ht.resize(static_cast<std::size_t>(n_));
    const double norm = 1.0 / std::sqrt(static_cast<double>(n_));
    for (int k = 0; k < n_; ++k) {
      double re = 0.0, im = 0.0;
      for (int j = 0; j < n_; ++j) {
        const double a = 2.0 * std::numbers::pi * k * j / n_;
        re += h[static_cast<std::size_t>(j)] * std::cos(a);
        im -= h[static_cast<std::size_t>(j)] * std::sin(a);
      }
      p.ht[static_cast<std::size_t>(k)] = {re * norm, im * norm};
      p.weight[static_cast<std::size_t>(k)] = std::norm(p.ht[static_cast<std::size_t>(k)]);
    }
  }
  return p;
}

std::vector<double> Eigenbasis::synthesize(const Projection& p, double u,
                                           double scale) const {
  std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
  if (mode_ == DiagMode::exact) {
    Eigen::VectorXd coef(n_);
    for (int k = 0; k < n_; ++k) {
      coef[k] = (p.weight[static_cast<std::size_t>(k)] == 0.0)
                    ? 0.0
                    : p.g[k] / (gaps_[static_cast<std::size_t>(k)] + u);
    }
    Eigen::VectorXd yv = V_ * coef;
    for (int j = 0; j < n_; ++j) y[static_cast<std::size_t>(j)] = scale * yv[j];
  } else {
    const double norm = 1.0 / std::sqrt(static_cast<double>(n_));
    for (int j = 0; j < n_; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n_; ++k) {
        if (p.weight[static_cast<std::size_t>(k)] == 0.0) continue;
        const double a = 2.0 * std::numbers::pi * k * j / n_;
        const auto& hk = p.ht[static_cast<std::size_t>(k)];
        acc += (hk.real() * std::cos(a) - hk.imag() * std::sin(a)) /
               (gaps_[static_cast<std::size_t>(k)] + u);
      }
      y[static_cast<std::size_t>(j)] = scale * norm * acc;
    }
  }
  return y;
}

Eigenbasis diagonalize(const CouplingMatrix& J, DiagMode mode) {
  return mode == DiagMode::exact ? Eigenbasis::exact(J) : Eigenbasis::circulant(J);
}

double epsilon_sm(double lambda, const Eigenbasis& basis, const std::vector<double>& h) {
  const double u = lambda + basis.min_eigenvalue();
  if (!(u > 0.0)) {
    throw NumericalError("epsilon_sm: lambda must exceed -mu_min");
  }
  const auto p = basis.project(h);
  return eps_of_u(basis.gaps(), p.weight, basis.size(), basis.min_eigenvalue(), u);
}

SphericalSolution solve_spherical(const std::vector<double>& h, const CouplingMatrix& J,
                                  const Grid& grid, double gamma, DiagMode mode,
                                  const Eigenbasis* basis_in) {
  if (static_cast<int>(h.size()) != grid.N || J.size() != grid.N) {
    throw ConfigError("spherical: h, J and grid sizes must agree");
  }
  Eigenbasis local;
  const Eigenbasis* basis = basis_in;
  if (basis == nullptr) {
    local = diagonalize(J, mode);
    basis = &local;
  }
  const int n = basis->size();
  const auto proj = basis->project(h);
  const auto& gaps = basis->gaps();
  const auto& w = proj.weight;
  const double mu_min = basis->min_eigenvalue();

  double wsum = 0.0;
  for (double v : w) wsum += v;
  if (!(wsum > 0.0)) {
    throw DegenerateInputError(
        "spherical: the field vector has no overlap with any eigenmode (h = 0)");
  }

  SphericalSolution sol;

  // The dual value eps(u) is strictly concave with its maximum at u* in (0, 1/N]
  // (the derivative is (R/Q - N)/2 and R/Q <= 1/u). Bracket the peak by walking
  // u down geometrically from 1/N, then golden-section in log u.
  auto eps_at = [&](double u) { return eps_of_u(gaps, w, n, mu_min, u); };
  const double u_hi_limit = 1.000001 / n;
  const double u_floor = 1e-16 / n;

  double u_hi = u_hi_limit;
  double u_prev = u_hi;
  double e_prev = eps_at(u_prev);
  double u_lo = 0.0;
  int direction_changes = 0;
  double last_delta = 0.0;
  for (int j = 1;; ++j) {
    const double u_cur = u_hi * std::pow(0.25, j);
    if (u_cur < u_floor) {
      u_lo = u_floor;
      sol.bracket_warning = true;  // peak pushed against the spectral edge
      break;
    }
    const double e_cur = eps_at(u_cur);
    const double delta = e_cur - e_prev;
    if (last_delta != 0.0 && ((delta > 0) != (last_delta > 0))) ++direction_changes;
    last_delta = delta;
    if (e_cur < e_prev) {
      u_lo = u_cur;
      break;
    }
    u_prev = u_cur;
    e_prev = e_cur;
  }
  if (direction_changes > 1) sol.bracket_warning = true;

  // golden-section maximization on z = log u
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double za = std::log(u_lo), zb = std::log(u_hi);
  double z1 = zb - gr * (zb - za), z2 = za + gr * (zb - za);
  double f1 = eps_at(std::exp(z1)), f2 = eps_at(std::exp(z2));
  while (zb - za > 1e-10) {
    if (f1 < f2) {
      za = z1;
      z1 = z2;
      f1 = f2;
      z2 = za + gr * (zb - za);
      f2 = eps_at(std::exp(z2));
    } else {
      zb = z2;
      z2 = z1;
      f2 = f1;
      z1 = zb - gr * (zb - za);
      f1 = eps_at(std::exp(z1));
    }
  }
  double u_star = std::exp(0.5 * (za + zb));

  // polish on the constraint residual phi(u) = R/Q - N, monotone decreasing in u;
  // its root is the stationary point where the sphere constraint holds exactly.
  auto constraint_gap = [&](double u) {
    const double q = q_sum(gaps, w, u);
    return r_sum(gaps, w, u) / q - static_cast<double>(n);
  };
  {
    double lo = u_star, hi = u_star;
    double flo = constraint_gap(lo);
    if (flo > 0.0) {
      hi = u_hi_limit;
      if (constraint_gap(hi) > 0.0) hi = 2.0 / n;  // phi(1/N) <= 0 in exact arithmetic
    } else {
      lo = u_floor;
      if (constraint_gap(lo) < 0.0) {
        sol.bracket_warning = true;  // no root above the floor; keep golden result
        lo = hi = u_star;
      }
    }
    if (hi > lo) {
      for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (constraint_gap(mid) > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      u_star = 0.5 * (lo + hi);
    }
  }

  const double q_star = q_sum(gaps, w, u_star);
  const double d_hat = std::sqrt(q_star);
  sol.lambda = u_star - mu_min;
  sol.y = basis->synthesize(proj, u_star, 1.0 / d_hat);
  sol.epsilon_sm = eps_at(u_star);
  sol.eta_sm = std::exp(sol.epsilon_sm) / (gamma * std::sqrt(grid.T));

  double y_sq = 0.0, hy = 0.0;
  for (int j = 0; j < n; ++j) {
    y_sq += sol.y[static_cast<std::size_t>(j)] * sol.y[static_cast<std::size_t>(j)];
    hy += h[static_cast<std::size_t>(j)] * sol.y[static_cast<std::size_t>(j)];
  }
  sol.D = (grid.T / grid.dt) * hy;
  sol.constraint_residual = std::abs(y_sq / n - 1.0);
  sol.constraint_ok = sol.constraint_residual <= 1e-8;

  // ||(J + lambda) y - h / d_hat|| / ||h||, with the Toeplitz product
  double res2 = 0.0, h2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double acc = sol.lambda * sol.y[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      acc += J(i, j) * sol.y[static_cast<std::size_t>(j)];
    }
    const double r = acc - h[static_cast<std::size_t>(i)] / d_hat;
    res2 += r * r;
    h2 += h[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)];
  }
  sol.stationarity_residual = std::sqrt(res2 / h2);
  return sol;
}

SpinSequence project_to_hypercube(const SphericalSolution& sol, const Grid& grid) {
  SpinSequence seq;
  seq.grid = grid;
  seq.s.resize(sol.y.size());
  for (std::size_t i = 0; i < sol.y.size(); ++i) {
    seq.s[i] = (sol.y[i] < 0.0) ? -1 : 1;
  }
  return seq;
}

}  // namespace ddopt
