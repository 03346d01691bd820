#ifndef DDOPT_SPHERICAL_HPP
#define DDOPT_SPHERICAL_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ddopt/coupling.hpp"
#include "ddopt/grid.hpp"
#include "ddopt/sequences.hpp"

namespace ddopt {

enum class DiagMode { exact, circulant };

// Diagonalization of the coupling operator. `exact` is a full symmetric
// eigendecomposition; `circulant` diagonalizes the circulant extension of the
// Toeplitz first row by discrete Fourier transform and is approximate at finite N.
class Eigenbasis {
 public:
  static Eigenbasis exact(const CouplingMatrix& J);
  static Eigenbasis circulant(const CouplingMatrix& J);

  DiagMode mode() const { return mode_; }
  int size() const { return n_; }
  const std::vector<double>& eigenvalues() const { return mu_; }  // mode order
  double min_eigenvalue() const { return mu_min_; }

  struct Projection {
    std::vector<double> weight;              // |<mode_k, h>|^2
    Eigen::VectorXd g;                       // exact-mode coefficients
    std::vector<std::complex<double>> ht;    // circulant-mode coefficients
  };
  Projection project(const std::vector<double>& h) const;

  // y = scale * sum_k mode_k * coeff_k / (mu_k + lambda), with mu_k + lambda
  // supplied as gap_k + u to stay exact near the spectral edge.
  std::vector<double> synthesize(const Projection& p, double u, double scale) const;

  // mu_k - mu_min >= 0 in mode order
  const std::vector<double>& gaps() const { return gaps_; }

 private:
  DiagMode mode_ = DiagMode::exact;
  int n_ = 0;
  double mu_min_ = 0.0;
  std::vector<double> mu_;
  std::vector<double> gaps_;
  Eigen::MatrixXd V_;  // exact mode only
};

Eigenbasis diagonalize(const CouplingMatrix& J, DiagMode mode = DiagMode::exact);

// Continuous-spin relaxation of the sequence-optimization problem: spins on the
// sphere sum y_i^2 = N instead of the hypercube. Solved in closed form given the
// eigenbasis, up to a one-parameter search over the multiplier lambda.
struct SphericalSolution {
  std::vector<double> y;
  double lambda = 0.0;      // discrete-convention multiplier (pairs with J_ij)
  double D = 0.0;           // (T/dt) * sum_i h_i y_i
  double epsilon_sm = 0.0;  // lower bound on the log-sensitivity
  double eta_sm = 0.0;      // e^epsilon_sm / (gamma sqrt(T))
  double constraint_residual = 0.0;    // |sum y^2 / N - 1|
  double stationarity_residual = 0.0;  // ||(J+lambda) y - h/D_hat|| / ||h||
  bool constraint_ok = true;
  bool bracket_warning = false;
};

// epsilon_SM(lambda) = 1/2 - (N/2) lambda - (1/2) log( h^T (J+lambda)^{-1} h ).
// Defined for lambda > -mu_min; the unique interior stationary point is where the
// spherical constraint holds, and its value bounds every hypercube epsilon from below.
double epsilon_sm(double lambda, const Eigenbasis& basis, const std::vector<double>& h);

SphericalSolution solve_spherical(const std::vector<double>& h, const CouplingMatrix& J,
                                  const Grid& grid, double gamma,
                                  DiagMode mode = DiagMode::exact,
                                  const Eigenbasis* basis = nullptr);

// s_i = sign(y_i), with sign(0) = +1.
SpinSequence project_to_hypercube(const SphericalSolution& sol, const Grid& grid);

}  // namespace ddopt

#endif
