#ifndef CIRCDFM_DIAGNOSTICS_HPP_
#define CIRCDFM_DIAGNOSTICS_HPP_

#include <span>
#include <string>
#include <vector>

#include "circdfm/mcmc.hpp"
#include "circdfm/rng.hpp"
#include "circdfm/votes_io.hpp"

namespace circdfm {

struct WaicResult {
  double waic = 0.0;
  double lppd = 0.0;
  double penalty = 0.0;
  bool has_votes = true;  // false for a period with no observed votes
};

// Per-period WAIC. Vote probabilities are recomputed per draw from the raw
// parameter draws; the value is invariant to wrapping and reflection.
WaicResult waic_period(const ChainOutput& draws, const VoteDataset& data,
                       int period);

// Ranks per unfolded angle, ascending; ties broken by unit id. means[k]
// belongs to unit_ids[k]; the result is the rank of each input position.
std::vector<int> unfold_ranks(std::span<const double> means,
                              std::span<const std::string> unit_ids);

// Spearman rank correlation with midrank ties.
double spearman(std::span<const double> ranks_a,
                std::span<const double> ranks_b);

struct VonMisesMixture {
  int k = 0;
  std::vector<double> means;
  std::vector<double> concentrations;
  std::vector<double> weights;
  double loglik = 0.0;
};

// EM fit of a K-component von Mises mixture, best of 10 random restarts.
VonMisesMixture vm_mixture_fit(std::span<const double> angles, int K,
                               RngStream& rng);

// Responsibilities of a fitted mixture for the given angles (n x K).
Eigen::MatrixXd vm_mixture_responsibilities(const VonMisesMixture& fit,
                                            std::span<const double> angles);

struct ClusterResult {
  int k = 0;
  VonMisesMixture fit;
  std::vector<double> bic;          // indexed from k_min
  int k_min = 2;
  Eigen::MatrixXd responsibilities; // n x chosen K
  std::vector<std::string> warnings;
};

// Fits K = k_min..k_max and returns the BIC minimizer (BIC = -2 loglik +
// (3K - 1) log n). k_max shrinks to n with a warning when n < k_max.
ClusterResult bic_select(std::span<const double> angles, int k_min, int k_max,
                         RngStream& rng);

// Concentration solving A(k) = rbar approximately (piecewise rational map).
double vm_concentration_from_resultant(double rbar);

}  // namespace circdfm

#endif  // CIRCDFM_DIAGNOSTICS_HPP_
