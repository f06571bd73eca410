#ifndef CIRCDFM_CONFIG_HPP_
#define CIRCDFM_CONFIG_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "circdfm/errors.hpp"
#include "circdfm/votes_io.hpp"

namespace circdfm {

// Hyperprior constants. Defaults are the primary analysis priors; the
// "alternative" preset switches to the sensitivity-analysis set.
struct HyperPriorConfig {
  double mu_mean = 3.073;       // normal, truncated to (0, inf)
  double mu_sd = 1.588;
  double rho_mean = 0.9;        // normal, truncated to [0, 1]
  double rho_sd = 0.03;
  double tau2_mean = 2.473;     // exponential
  double varsigma_mean = 1.0;   // gamma via mean/variance
  double varsigma_var = 0.299;
  double lambda_inv_mean = 25.0;  // 1/lambda is exponential with this mean

  double varsigma_shape() const {
    return varsigma_mean * varsigma_mean / varsigma_var;
  }
  double varsigma_rate() const { return varsigma_mean / varsigma_var; }
};

struct SamplerConfig {
  int iterations = 5000;
  int burnin = 2500;
  int thin = 1;
  double hmc_step = 0.1;
  int hmc_leapfrog = 10;
  double hmc_c1 = 1.0;  // momentum concentrations
  double hmc_c2 = 1.0;
  double kappa_step = 1.0;   // initial log-scale random-walk sd
  double hyper_step = 0.3;
  double target_kappa_accept = 0.40;
  double target_hyper_accept = 0.30;
  double target_hmc_accept = 0.725;
  int chains = 1;
};

// Sign constraint used to resolve reflection invariance: the named unit's
// ideal point must carry the given sign over an inclusive period range.
struct AnchorConstraint {
  std::string unit;
  std::string period_lo;
  std::string period_hi;
  bool positive = false;
};

// Fixed process values for the prior-sim command (not hyperpriors).
// tau_v and tau_w are the innovation standard deviations of the two
// auxiliary processes.
struct PriorSimConfig {
  double mu = 3.073;
  double rho = 0.9;
  double tau_v = std::sqrt(2.473);
  double tau_w = std::sqrt(2.473);
};

// Ground-truth generator settings for the synth command.
struct SynthConfig {
  int units = 9;
  int periods = 10;
  int items_per_period = 30;
  double mu = 3.0;
  double rho = 0.95;
  double tau2 = 0.3;
  double varsigma = 1.0;
  double kappa_mean = 20.0;   // lambda of the exponential kappa prior
  double missing_rate = 0.0;  // MCAR drop probability per vote
};

struct RunConfig {
  HyperPriorConfig hyper;
  SamplerConfig sampler;
  std::vector<AnchorConstraint> anchors;
  std::uint64_t seed = 0;
  PriorSimConfig prior_sim;
  SynthConfig synth;
  std::string config_hash;
  std::vector<std::string> warnings;
};

// Parses the sectioned key-value config file; missing keys fall back to the
// defaults above. Unknown keys produce warnings, invalid values throw.
RunConfig load_config(const std::filesystem::path& path);

// Validation shared by invariants that need both config and data: anchor
// units/periods must exist, ranges must be nonempty, within the anchor
// unit's service, and no period may be covered by two anchors.
struct ResolvedAnchor {
  int unit = 0;
  int period_lo = 0;
  int period_hi = 0;
  bool positive = false;
};
std::vector<ResolvedAnchor> resolve_anchors(
    const std::vector<AnchorConstraint>& anchors, const VoteDataset& data);

}  // namespace circdfm

#endif  // CIRCDFM_CONFIG_HPP_
