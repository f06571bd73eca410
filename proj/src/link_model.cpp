#include "circdfm/link_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "circdfm/special.hpp"

namespace circdfm {

namespace {

inline double clamp_prob(double p) {
  return std::clamp(p, kProbEps, 1.0 - kProbEps);
}

inline double sign_of(double x) {
  return (x > 0.0) - (x < 0.0);
}

// d_G(zeta, beta)^2 - d_G(psi, beta)^2, the argument of the link CDF.
inline double utility_diff(double beta, const CaseParams& cp) {
  const double dz = geodesic_dist(cp.zeta, beta);
  const double dp = geodesic_dist(cp.psi, beta);
  return dz * dz - dp * dp;
}

}  // namespace

double link_density(double z, double kappa) {
  if (z < -kPiSq || z > kPiSq) return 0.0;
  const double x = (z + kPiSq) / (2.0 * kPiSq);
  if (x == 0.0 || x == 1.0) {
    if (kappa > 1.0) return 0.0;
    if (kappa == 1.0) return 1.0 / (2.0 * kPiSq);
    return std::numeric_limits<double>::infinity();
  }
  const double log_pdf = (kappa - 1.0) * (std::log(x) + std::log1p(-x)) -
                         log_beta(kappa, kappa);
  return std::exp(log_pdf) / (2.0 * kPiSq);
}

double link_cdf(double z, double kappa) {
  const double x = (z + kPiSq) / (2.0 * kPiSq);
  return reg_inc_beta(kappa, kappa, x);
}

double vote_prob(double beta, const CaseParams& cp) {
  return link_cdf(utility_diff(beta, cp), cp.kappa);
}

double case_loglik(const CaseParams& cp, std::span<const AngleVote> votes) {
  double ll = 0.0;
  for (const AngleVote& v : votes) {
    const double theta = clamp_prob(vote_prob(v.beta, cp));
    ll += v.vote ? std::log(theta) : std::log1p(-theta);
  }
  return ll;
}

std::pair<double, double> case_loglik_grad(const CaseParams& cp,
                                           std::span<const AngleVote> votes) {
  double gpsi = 0.0;
  double gzeta = 0.0;
  for (const AngleVote& v : votes) {
    const double e = utility_diff(v.beta, cp);
    const double theta = clamp_prob(link_cdf(e, cp.kappa));
    const double dll_dtheta =
        v.vote ? 1.0 / theta : -1.0 / (1.0 - theta);
    const double g = link_density(e, cp.kappa);
    // d e / d psi = -2 d_G(psi, beta) sign(sin(psi - beta))
    const double dpsi = -2.0 * geodesic_dist(cp.psi, v.beta) *
                        sign_of(std::sin(cp.psi - v.beta));
    const double dzeta = 2.0 * geodesic_dist(cp.zeta, v.beta) *
                         sign_of(std::sin(cp.zeta - v.beta));
    gpsi += dll_dtheta * g * dpsi;
    gzeta += dll_dtheta * g * dzeta;
  }
  return {gpsi, gzeta};
}

}  // namespace circdfm
