#ifndef CIRCDFM_MCMC_HPP_
#define CIRCDFM_MCMC_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "circdfm/circular_process.hpp"
#include "circdfm/config.hpp"
#include "circdfm/link_model.hpp"
#include "circdfm/rng.hpp"
#include "circdfm/votes_io.hpp"

namespace circdfm {

// Full latent state of the sampler. Ideal-point angles are always derived
// from the auxiliary paths, never stored separately.
struct ModelState {
  std::vector<AuxPath> aux;                    // one per unit
  std::vector<std::vector<CaseParams>> cases;  // [period][item]
  ProcessHyper hyper;
  double lambda = 20.0;  // mean of the exponential kappa prior

  double beta(int unit, int period, const VoteDataset& data) const {
    const int row = period - data.service(unit).lo;
    return atan2_angle(aux[unit].z(row, 0) + hyper.mu, aux[unit].z(row, 1));
  }
};

// Runtime sampler settings plus the state adapted during burn-in.
struct SamplerSettings {
  int iterations = 5000;
  int burnin = 2500;
  int thin = 1;
  double hmc_step = 0.1;
  int hmc_leapfrog = 10;
  double hmc_c1 = 1.0;
  double hmc_c2 = 1.0;
  double kappa_step = 1.0;
  double hyper_step = 0.3;
  double target_kappa_accept = 0.40;
  double target_hyper_accept = 0.30;
  double target_hmc_accept = 0.725;

  static SamplerSettings from_config(const SamplerConfig& c);
};

struct AcceptanceReport {
  double hmc = 0.0;
  double kappa = 0.0;
  double hyper = 0.0;
  double rho = 0.0;
  double ess_avg_shrinks = 0.0;
};

// Thinned posterior draws for every parameter block, with the column
// metadata needed to interpret them.
struct ChainOutput {
  std::vector<std::string> units;
  std::vector<std::string> periods;
  std::vector<std::vector<std::string>> item_labels;  // per period
  std::vector<std::pair<int, int>> beta_cols;         // (unit, period)
  std::vector<std::pair<int, int>> case_cols;         // (period, item)

  Eigen::MatrixXd beta;   // draws x beta_cols
  Eigen::MatrixXd psi;    // draws x case_cols
  Eigen::MatrixXd zeta;
  Eigen::MatrixXd kappa;
  Eigen::MatrixXd hyper;  // draws x 5: mu, rho, tau2, varsigma, lambda

  std::uint64_t seed = 0;
  int chain = 0;
  int iterations = 0;
  int burnin = 0;
  int thin = 0;
  bool identified = false;
  AcceptanceReport acceptance;
  double elapsed_seconds = 0.0;
  std::string config_hash;

  int n_draws() const { return static_cast<int>(beta.rows()); }
  int beta_col(int unit, int period) const;  // -1 when outside service
  int case_col(int period, int item) const;
};

// Ground truth captured by the synthetic-data generator.
struct TruthRecord {
  std::vector<std::string> units;
  std::vector<std::string> periods;
  std::vector<std::vector<std::string>> item_labels;
  std::vector<std::vector<double>> beta;   // [unit][period]
  std::vector<std::vector<double>> psi;    // [period][item]
  std::vector<std::vector<double>> zeta;
  std::vector<std::vector<double>> kappa;
  ProcessHyper hyper;
  double lambda = 0.0;
};

// --- single-block transitions -------------------------------------------

// Elliptical slice update of one unit's auxiliary path. Returns the number
// of bracket shrinks used (0 means the first proposal was accepted); throws
// after 1000 shrinks.
int ess_update_unit(ModelState& state, int unit, const VoteDataset& data,
                    RngStream& rng);

// Joint HMC update of one item's (psi, zeta) under a flat circular prior
// with von Mises momenta. Returns the accept flag.
bool hmc_update_case(ModelState& state, int period, int item,
                     const VoteDataset& data, const SamplerSettings& settings,
                     RngStream& rng);

// Log-scale random-walk update of one item's kappa.
bool mh_update_kappa(ModelState& state, int period, int item,
                     const VoteDataset& data, const SamplerSettings& settings,
                     RngStream& rng);

// Joint log-scale random walk on (mu, tau2, varsigma); rho held fixed.
bool mh_update_hyper(ModelState& state, const HyperPriorConfig& prior,
                     const SamplerSettings& settings, RngStream& rng);

// Independence Metropolis-Hastings for rho with a truncated-Gaussian
// proposal built from the AR cross products; falls back to a prior draw
// when no unit serves more than one period.
bool mh_update_rho(ModelState& state, const HyperPriorConfig& prior,
                   RngStream& rng);

// Conjugate draw of lambda through its rate 1/lambda.
void gibbs_update_lambda(ModelState& state, const HyperPriorConfig& prior,
                         RngStream& rng);

// --- whole-chain driver ----------------------------------------------------

// Draws the initial state from the priors.
ModelState init_state(const VoteDataset& data, const HyperPriorConfig& prior,
                      RngStream& rng);

// One full sweep in the fixed order: all units, all items (HMC), all items
// (kappa), hyper block, rho, lambda. Returns per-block acceptance for the
// sweep. Adaptation is the caller's job.
struct SweepStats {
  double hmc_rate = 0.0;
  double kappa_rate = 0.0;
  bool hyper_accept = false;
  bool rho_accept = false;
  int ess_shrinks = 0;
};
SweepStats run_sweep(ModelState& state, const VoteDataset& data,
                     const SamplerSettings& settings,
                     const HyperPriorConfig& prior, RngStream& rng);

ChainOutput run_chain(const VoteDataset& data, const RunConfig& config,
                      int chain_index = 0, bool progress = true);

// Forward model: prior beta paths (all units serve every period), uniform
// item positions, exponential precisions, Bernoulli votes.
std::pair<VoteDataset, TruthRecord> generate_synthetic(const SynthConfig& spec,
                                                       RngStream& rng);

// Same forward model with the latent parameters fixed by the caller.
VoteDataset synth_votes_from_truth(const TruthRecord& truth,
                                   double missing_rate, RngStream& rng);

// Total vote log-likelihood of the current state (used by identification
// invariance checks and diagnostics).
double total_loglik(const ModelState& state, const VoteDataset& data);

}  // namespace circdfm

#endif  // CIRCDFM_MCMC_HPP_
