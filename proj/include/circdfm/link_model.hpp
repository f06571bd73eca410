#ifndef CIRCDFM_LINK_MODEL_HPP_
#define CIRCDFM_LINK_MODEL_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "circdfm/angles.hpp"

namespace circdfm {

// Probabilities are kept this far away from {0, 1} before taking logs so
// that Metropolis ratios stay finite at large link precision.
inline constexpr double kProbEps = 1e-12;

// Item-level parameters: reverse position psi, affirm position zeta (both
// wrapped to [-pi, pi)) and the link precision kappa > 0.
struct CaseParams {
  double psi = 0.0;
  double zeta = 0.0;
  double kappa = 1.0;
};

// One voter on an item: the voter's angle and the binary vote.
struct AngleVote {
  double beta = 0.0;
  std::uint8_t vote = 0;
};

// Density of the shifted and scaled symmetric beta shock difference on
// [-pi^2, pi^2]; zero outside the support.
double link_density(double z, double kappa);

// CDF of the shock difference: I_x(kappa, kappa) at x = (z + pi^2)/(2 pi^2).
double link_cdf(double z, double kappa);

// Probability of a reversal vote for a voter at angle beta.
double vote_prob(double beta, const CaseParams& cp);

// Bernoulli log-likelihood of the given votes under one item's parameters.
double case_loglik(const CaseParams& cp, std::span<const AngleVote> votes);

// Analytic gradient of case_loglik with respect to (psi, zeta). At angles
// exactly antipodal to (or coincident with) a voter the distance-squared
// derivative is non-smooth; sign(sin(x)) = 0 is used there (subgradient 0).
std::pair<double, double> case_loglik_grad(const CaseParams& cp,
                                           std::span<const AngleVote> votes);

}  // namespace circdfm

#endif  // CIRCDFM_LINK_MODEL_HPP_
