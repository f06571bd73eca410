#ifndef CIRCDFM_CIRCULAR_PROCESS_HPP_
#define CIRCDFM_CIRCULAR_PROCESS_HPP_

#include <Eigen/Dense>
#include <vector>

#include "circdfm/angles.hpp"
#include "circdfm/rng.hpp"

namespace circdfm {

// Hyperparameters of the two auxiliary AR(1) processes driving each unit's
// trajectory. The first process (v) has mean mu and innovation variance
// tau2; the second (w) has mean zero and innovation variance varsigma * tau2.
struct ProcessHyper {
  double mu = 3.0;
  double rho = 0.9;
  double tau2 = 1.0;
  double varsigma = 1.0;
};

// Auxiliary state for one unit over its served periods, stored centered:
// column 0 holds v_t - mu, column 1 holds w_t.
struct AuxPath {
  Eigen::MatrixX2d z;

  int length() const { return static_cast<int>(z.rows()); }
};

struct IdealPointPath {
  std::vector<double> beta;
};

// Stationary standard deviations of the two auxiliary processes.
inline double stationary_sd_v(const ProcessHyper& h) {
  return std::sqrt(h.tau2 / (1.0 - h.rho * h.rho));
}
inline double stationary_sd_w(const ProcessHyper& h) {
  return std::sqrt(h.varsigma * h.tau2 / (1.0 - h.rho * h.rho));
}

// Tridiagonal AR(1) precision pattern: diagonal (1, 1+rho^2, ..., 1+rho^2, 1)
// with off-diagonals -rho. Its inverse is rho^|s-t| / (1 - rho^2). For T = 1
// the 1x1 matrix (1 - rho^2) keeps the stationary-marginal contract.
Eigen::MatrixXd build_precision(double rho, int T);

// Quadratic form x' Omega(rho) x without materializing the matrix.
double precision_quadratic_form(double rho, const Eigen::VectorXd& x);

// Forward simulation of the two AR processes from their stationary laws;
// the result is stored centered, per AuxPath.
AuxPath simulate_aux_path(const ProcessHyper& hyper, int T, RngStream& rng);

// Draw from MN(0, Omega^{-1}(rho), diag(tau2, varsigma * tau2)) by
// independent per-column AR(1) forward simulation.
Eigen::MatrixX2d sample_matrix_normal(const ProcessHyper& hyper, int T,
                                      RngStream& rng);

// Angles implied by an auxiliary path.
IdealPointPath derive_betas(const AuxPath& path, double mu);

// Stationary (projected Gaussian) density of the ideal point, evaluated by
// Gauss-Legendre panels over the radial coordinate.
double stationary_density(double beta, const ProcessHyper& hyper);

// n independent draws of the ideal point at a fixed period, simulated
// through the auxiliary processes and the angle transform.
std::vector<double> simulate_prior_betas(const ProcessHyper& hyper, int T,
                                         int n, RngStream& rng);

}  // namespace circdfm

#endif  // CIRCDFM_CIRCULAR_PROCESS_HPP_
