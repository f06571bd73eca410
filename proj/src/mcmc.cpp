#include "circdfm/mcmc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

namespace circdfm {

namespace {

constexpr int kMaxEssShrinks = 1000;

double clamp_prob(double p) { return std::clamp(p, kProbEps, 1.0 - kProbEps); }

// Vote log-likelihood of one unit given its current path angles.
double unit_loglik(const ModelState& state, int unit, const VoteDataset& data) {
  const ServiceRange sr = data.service(unit);
  const AuxPath& path = state.aux[unit];
  double ll = 0.0;
  int cached_period = -1;
  double beta = 0.0;
  for (const UnitVote& v : data.unit_votes(unit)) {
    if (v.period != cached_period) {
      const int row = v.period - sr.lo;
      beta = atan2_angle(path.z(row, 0) + state.hyper.mu, path.z(row, 1));
      cached_period = v.period;
    }
    const double theta =
        clamp_prob(vote_prob(beta, state.cases[v.period][v.item]));
    ll += v.y ? std::log(theta) : std::log1p(-theta);
  }
  return ll;
}

std::vector<AngleVote> gather_item_votes(const ModelState& state, int period,
                                         int item, const VoteDataset& data) {
  std::vector<AngleVote> out;
  const auto votes = data.item_votes(period, item);
  out.reserve(votes.size());
  for (const auto& [unit, y] : votes) {
    out.push_back(AngleVote{state.beta(unit, period, data), y});
  }
  return out;
}

// Matrix-normal log density (up to mu/tau2/varsigma-free constants) of one
// unit's uncentered path under the process prior.
double path_log_prior(const Eigen::MatrixX2d& z, double state_mu, double mu,
                      double rho, double tau2, double varsigma) {
  const int T = static_cast<int>(z.rows());
  Eigen::VectorXd x = z.col(0).array() + (state_mu - mu);
  const double qv = precision_quadratic_form(rho, x);
  Eigen::VectorXd w = z.col(1);
  const double qw = precision_quadratic_form(rho, w);
  return std::log1p(-rho * rho) -
         0.5 * T * std::log(varsigma * tau2 * tau2) -
         0.5 * (qv + qw / varsigma) / tau2;
}

// Log hyperprior kernels (constants dropped).
double log_prior_mu(double mu, const HyperPriorConfig& p) {
  if (!(mu > 0.0)) return -std::numeric_limits<double>::infinity();
  const double d = (mu - p.mu_mean) / p.mu_sd;
  return -0.5 * d * d;
}
double log_prior_tau2(double tau2, const HyperPriorConfig& p) {
  if (!(tau2 > 0.0)) return -std::numeric_limits<double>::infinity();
  return -tau2 / p.tau2_mean;
}
double log_prior_varsigma(double vs, const HyperPriorConfig& p) {
  if (!(vs > 0.0)) return -std::numeric_limits<double>::infinity();
  return (p.varsigma_shape() - 1.0) * std::log(vs) - p.varsigma_rate() * vs;
}

double hyper_block_logpost(const ModelState& state, double mu, double tau2,
                           double varsigma, const HyperPriorConfig& prior) {
  double lp = log_prior_mu(mu, prior) + log_prior_tau2(tau2, prior) +
              log_prior_varsigma(varsigma, prior);
  if (!std::isfinite(lp)) return lp;
  for (const AuxPath& path : state.aux) {
    lp += path_log_prior(path.z, state.hyper.mu, mu, state.hyper.rho, tau2,
                         varsigma);
  }
  return lp;
}

void check_finite(const ModelState& state, int iteration) {
  auto fail = [&](const std::string& block, const std::string& detail) {
    std::ostringstream msg;
    msg << "non-finite state in block '" << block << "' at iteration "
        << iteration << ": " << detail;
    throw std::runtime_error(msg.str());
  };
  if (!std::isfinite(state.hyper.mu) || !std::isfinite(state.hyper.rho) ||
      !std::isfinite(state.hyper.tau2) || !std::isfinite(state.hyper.varsigma)) {
    std::ostringstream d;
    d << "mu=" << state.hyper.mu << " rho=" << state.hyper.rho
      << " tau2=" << state.hyper.tau2 << " varsigma=" << state.hyper.varsigma;
    fail("hyper", d.str());
  }
  if (!std::isfinite(state.lambda)) fail("lambda", "lambda is non-finite");
  for (std::size_t i = 0; i < state.aux.size(); ++i) {
    if (!state.aux[i].z.allFinite()) {
      fail("aux", "unit index " + std::to_string(i));
    }
  }
  for (std::size_t t = 0; t < state.cases.size(); ++t) {
    for (std::size_t j = 0; j < state.cases[t].size(); ++j) {
      const CaseParams& cp = state.cases[t][j];
      if (!std::isfinite(cp.psi) || !std::isfinite(cp.zeta) ||
          !std::isfinite(cp.kappa) || !(cp.kappa > 0.0)) {
        fail("cases", "period " + std::to_string(t) + " item " +
                          std::to_string(j));
      }
    }
  }
}

}  // namespace

SamplerSettings SamplerSettings::from_config(const SamplerConfig& c) {
  SamplerSettings s;
  s.iterations = c.iterations;
  s.burnin = c.burnin;
  s.thin = c.thin;
  s.hmc_step = c.hmc_step;
  s.hmc_leapfrog = c.hmc_leapfrog;
  s.hmc_c1 = c.hmc_c1;
  s.hmc_c2 = c.hmc_c2;
  s.kappa_step = c.kappa_step;
  s.hyper_step = c.hyper_step;
  s.target_kappa_accept = c.target_kappa_accept;
  s.target_hyper_accept = c.target_hyper_accept;
  s.target_hmc_accept = c.target_hmc_accept;
  return s;
}

int ChainOutput::beta_col(int unit, int period) const {
  for (std::size_t c = 0; c < beta_cols.size(); ++c) {
    if (beta_cols[c].first == unit && beta_cols[c].second == period) {
      return static_cast<int>(c);
    }
  }
  return -1;
}

int ChainOutput::case_col(int period, int item) const {
  for (std::size_t c = 0; c < case_cols.size(); ++c) {
    if (case_cols[c].first == period && case_cols[c].second == item) {
      return static_cast<int>(c);
    }
  }
  return -1;
}

int ess_update_unit(ModelState& state, int unit, const VoteDataset& data,
                    RngStream& rng) {
  AuxPath& path = state.aux[unit];
  const int T = path.length();
  const Eigen::MatrixX2d z0 = path.z;
  const double ll0 = unit_loglik(state, unit, data);
  const double log_threshold = ll0 + std::log(rng.uniform());
  const Eigen::MatrixX2d u = sample_matrix_normal(state.hyper, T, rng);

  double a = rng.uniform(0.0, kTwoPi);
  double a_min = a - kTwoPi;
  double a_max = a;
  int shrinks = 0;
  for (;;) {
    path.z = std::cos(a) * z0 + std::sin(a) * u;
    if (unit_loglik(state, unit, data) > log_threshold) return shrinks;
    if (++shrinks > kMaxEssShrinks) {
      path.z = z0;
      throw std::runtime_error(
          "elliptical slice bracket failed to shrink for unit index " +
          std::to_string(unit));
    }
    if (a < 0.0) {
      a_min = a;
    } else {
      a_max = a;
    }
    a = rng.uniform(a_min, a_max);
  }
}

bool hmc_update_case(ModelState& state, int period, int item,
                     const VoteDataset& data, const SamplerSettings& settings,
                     RngStream& rng) {
  CaseParams& cp = state.cases[period][item];
  const int L = settings.hmc_leapfrog;
  double m1 = rng.von_mises(0.0, settings.hmc_c1);
  double m2 = rng.von_mises(0.0, settings.hmc_c2);
  if (L == 0) return true;

  const std::vector<AngleVote> votes =
      gather_item_votes(state, period, item, data);
  const std::span<const AngleVote> vspan(votes);
  const double eps = settings.hmc_step;
  const double c1 = settings.hmc_c1;
  const double c2 = settings.hmc_c2;

  CaseParams prop = cp;
  const double ll0 = case_loglik(cp, vspan);
  const double k0 = -c1 * std::cos(m1) - c2 * std::cos(m2);

  auto grad_ok = [&](std::pair<double, double>& g) {
    g = case_loglik_grad(prop, vspan);
    return std::isfinite(g.first) && std::isfinite(g.second);
  };

  std::pair<double, double> g;
  if (!grad_ok(g)) {
    std::cerr << "hmc_update_case: non-finite gradient, rejecting\n";
    return false;
  }
  m1 += 0.5 * eps * g.first;
  m2 += 0.5 * eps * g.second;
  for (int l = 0; l < L; ++l) {
    prop.psi = wrap_angle(prop.psi + eps * c1 * std::sin(m1));
    prop.zeta = wrap_angle(prop.zeta + eps * c2 * std::sin(m2));
    if (!grad_ok(g)) {
      std::cerr << "hmc_update_case: non-finite gradient, rejecting\n";
      return false;
    }
    const double scale = (l + 1 == L) ? 0.5 : 1.0;
    m1 += scale * eps * g.first;
    m2 += scale * eps * g.second;
  }

  const double ll1 = case_loglik(prop, vspan);
  const double k1 = -c1 * std::cos(m1) - c2 * std::cos(m2);
  const double log_accept = (ll1 - ll0) - (k1 - k0);
  if (std::log(rng.uniform()) < log_accept) {
    cp.psi = prop.psi;
    cp.zeta = prop.zeta;
    return true;
  }
  return false;
}

bool mh_update_kappa(ModelState& state, int period, int item,
                     const VoteDataset& data, const SamplerSettings& settings,
                     RngStream& rng) {
  CaseParams& cp = state.cases[period][item];
  const std::vector<AngleVote> votes =
      gather_item_votes(state, period, item, data);
  const std::span<const AngleVote> vspan(votes);

  const double kappa_new = cp.kappa * std::exp(settings.kappa_step * rng.normal());
  CaseParams prop = cp;
  prop.kappa = kappa_new;
  // exponential prior with mean lambda; kappa'/kappa is the log-scale Jacobian
  const double log_accept = case_loglik(prop, vspan) - case_loglik(cp, vspan) -
                            (kappa_new - cp.kappa) / state.lambda +
                            std::log(kappa_new) - std::log(cp.kappa);
  if (std::log(rng.uniform()) < log_accept) {
    cp.kappa = kappa_new;
    return true;
  }
  return false;
}

bool mh_update_hyper(ModelState& state, const HyperPriorConfig& prior,
                     const SamplerSettings& settings, RngStream& rng) {
  const double mu = state.hyper.mu;
  const double tau2 = state.hyper.tau2;
  const double vs = state.hyper.varsigma;
  const double s = settings.hyper_step;
  const double mu_new = mu * std::exp(s * rng.normal());
  const double tau2_new = tau2 * std::exp(s * rng.normal());
  const double vs_new = vs * std::exp(s * rng.normal());

  const double lp_new = hyper_block_logpost(state, mu_new, tau2_new, vs_new, prior);
  const double lp_old = hyper_block_logpost(state, mu, tau2, vs, prior);
  const double jacobian = std::log(mu_new / mu) + std::log(tau2_new / tau2) +
                          std::log(vs_new / vs);
  if (std::log(rng.uniform()) < lp_new - lp_old + jacobian) {
    // paths store v - mu; shifting the mean means re-centering column 0
    for (AuxPath& path : state.aux) {
      path.z.col(0).array() += mu - mu_new;
    }
    state.hyper.mu = mu_new;
    state.hyper.tau2 = tau2_new;
    state.hyper.varsigma = vs_new;
    return true;
  }
  return false;
}

bool mh_update_rho(ModelState& state, const HyperPriorConfig& prior,
                   RngStream& rng) {
  const double tau2 = state.hyper.tau2;
  const double vs = state.hyper.varsigma;
  double s1 = 0.0;  // lag-1 cross products
  double s2 = 0.0;  // lag-0 squares over transitions
  double init = 0.0;  // stationary initial-state statistics
  for (const AuxPath& path : state.aux) {
    const int T = path.length();
    init += path.z(0, 0) * path.z(0, 0) + path.z(0, 1) * path.z(0, 1) / vs;
    for (int t = 0; t + 1 < T; ++t) {
      s1 += path.z(t, 0) * path.z(t + 1, 0) +
            path.z(t, 1) * path.z(t + 1, 1) / vs;
      s2 += path.z(t, 0) * path.z(t, 0) + path.z(t, 1) * path.z(t, 1) / vs;
    }
  }

  if (s2 == 0.0) {
    // no unit serves more than one period: draw from the prior
    state.hyper.rho = rng.trunc_normal(prior.rho_mean, prior.rho_sd, 0.0, 1.0);
    return true;
  }

  const double prior_prec = 1.0 / (prior.rho_sd * prior.rho_sd);
  const double prec = prior_prec + s2 / tau2;
  const double mean = (prior.rho_mean * prior_prec + s1 / tau2) / prec;
  const double rho_new = rng.trunc_normal(mean, 1.0 / std::sqrt(prec), 0.0, 1.0);
  const double rho = state.hyper.rho;

  // the proposal omits the per-unit determinant and stationary first-state
  // factors; they enter here
  const double n_units = static_cast<double>(state.aux.size());
  const double log_accept =
      n_units * (std::log1p(-rho_new * rho_new) - std::log1p(-rho * rho)) +
      (rho_new * rho_new - rho * rho) / (2.0 * tau2) * init;
  if (std::log(rng.uniform()) < log_accept) {
    state.hyper.rho = rho_new;
    return true;
  }
  return false;
}

void gibbs_update_lambda(ModelState& state, const HyperPriorConfig& prior,
                         RngStream& rng) {
  double kappa_sum = 0.0;
  int n_items = 0;
  for (const auto& period_cases : state.cases) {
    for (const CaseParams& cp : period_cases) {
      kappa_sum += cp.kappa;
      ++n_items;
    }
  }
  const double rate = rng.gamma(1.0 + n_items, 1.0 / prior.lambda_inv_mean + kappa_sum);
  state.lambda = 1.0 / rate;
}

ModelState init_state(const VoteDataset& data, const HyperPriorConfig& prior,
                      RngStream& rng) {
  ModelState state;
  state.hyper.mu = rng.trunc_normal(prior.mu_mean, prior.mu_sd, 0.0,
                                    prior.mu_mean + 12.0 * prior.mu_sd);
  state.hyper.rho = rng.trunc_normal(prior.rho_mean, prior.rho_sd, 0.0, 1.0);
  state.hyper.tau2 = rng.exponential(prior.tau2_mean);
  state.hyper.varsigma =
      rng.gamma(prior.varsigma_shape(), prior.varsigma_rate());
  state.lambda = 1.0 / rng.exponential(prior.lambda_inv_mean);

  state.aux.reserve(data.n_units());
  for (int i = 0; i < data.n_units(); ++i) {
    state.aux.push_back(
        simulate_aux_path(state.hyper, data.service(i).length(), rng));
  }
  state.cases.resize(data.n_periods());
  for (int t = 0; t < data.n_periods(); ++t) {
    state.cases[t].resize(data.n_items(t));
    for (CaseParams& cp : state.cases[t]) {
      cp.psi = rng.uniform(-kPi, kPi);
      cp.zeta = rng.uniform(-kPi, kPi);
      cp.kappa = rng.exponential(state.lambda);
    }
  }
  return state;
}

SweepStats run_sweep(ModelState& state, const VoteDataset& data,
                     const SamplerSettings& settings,
                     const HyperPriorConfig& prior, RngStream& rng) {
  SweepStats stats;
  for (int i = 0; i < data.n_units(); ++i) {
    stats.ess_shrinks += ess_update_unit(state, i, data, rng);
  }
  int hmc_acc = 0;
  int kappa_acc = 0;
  int n_items = 0;
  for (int t = 0; t < data.n_periods(); ++t) {
    for (int j = 0; j < data.n_items(t); ++j) {
      hmc_acc += hmc_update_case(state, t, j, data, settings, rng);
    }
  }
  for (int t = 0; t < data.n_periods(); ++t) {
    for (int j = 0; j < data.n_items(t); ++j) {
      kappa_acc += mh_update_kappa(state, t, j, data, settings, rng);
      ++n_items;
    }
  }
  stats.hmc_rate = n_items > 0 ? static_cast<double>(hmc_acc) / n_items : 1.0;
  stats.kappa_rate = n_items > 0 ? static_cast<double>(kappa_acc) / n_items : 1.0;
  stats.hyper_accept = mh_update_hyper(state, prior, settings, rng);
  stats.rho_accept = mh_update_rho(state, prior, rng);
  gibbs_update_lambda(state, prior, rng);
  return stats;
}

ChainOutput run_chain(const VoteDataset& data, const RunConfig& config,
                      int chain_index, bool progress) {
  const auto t_start = std::chrono::steady_clock::now();
  RngStream rng(config.seed, static_cast<std::uint64_t>(chain_index));
  SamplerSettings settings = SamplerSettings::from_config(config.sampler);
  ModelState state = init_state(data, config.hyper, rng);

  ChainOutput out;
  out.units = data.units();
  out.periods = data.periods();
  out.item_labels.resize(data.n_periods());
  for (int t = 0; t < data.n_periods(); ++t) {
    out.item_labels[t] = data.item_labels(t);
    for (int j = 0; j < data.n_items(t); ++j) out.case_cols.emplace_back(t, j);
  }
  for (int i = 0; i < data.n_units(); ++i) {
    const ServiceRange sr = data.service(i);
    for (int t = sr.lo; t <= sr.hi; ++t) out.beta_cols.emplace_back(i, t);
  }
  out.seed = config.seed;
  out.chain = chain_index;
  out.iterations = settings.iterations;
  out.burnin = settings.burnin;
  out.thin = settings.thin;
  out.config_hash = config.config_hash;

  const int n_draws =
      (settings.iterations - settings.burnin) / settings.thin;
  out.beta.resize(n_draws, static_cast<Eigen::Index>(out.beta_cols.size()));
  out.psi.resize(n_draws, static_cast<Eigen::Index>(out.case_cols.size()));
  out.zeta.resize(n_draws, static_cast<Eigen::Index>(out.case_cols.size()));
  out.kappa.resize(n_draws, static_cast<Eigen::Index>(out.case_cols.size()));
  out.hyper.resize(n_draws, 5);

  double log_hmc_step = std::log(settings.hmc_step);
  double log_kappa_step = std::log(settings.kappa_step);
  double log_hyper_step = std::log(settings.hyper_step);
  auto clamp_log_step = [](double s) { return std::clamp(s, -12.0, 3.0); };

  double hmc_acc_sum = 0.0, kappa_acc_sum = 0.0;
  long long hyper_acc_n = 0, rho_acc_n = 0;
  long long post_iters = 0, total_shrinks = 0;

  int next_draw = 0;
  const int report_every = std::max(1, settings.iterations / 10);
  for (int it = 0; it < settings.iterations; ++it) {
    const bool adapting = it < settings.burnin;
    const SweepStats stats = run_sweep(state, data, settings, config.hyper, rng);
    check_finite(state, it);

    if (adapting) {
      const double gamma = std::pow(it + 1.0, -0.6);
      log_hmc_step = clamp_log_step(
          log_hmc_step + gamma * (stats.hmc_rate - settings.target_hmc_accept));
      log_kappa_step = clamp_log_step(
          log_kappa_step +
          gamma * (stats.kappa_rate - settings.target_kappa_accept));
      log_hyper_step = clamp_log_step(
          log_hyper_step + gamma * ((stats.hyper_accept ? 1.0 : 0.0) -
                                    settings.target_hyper_accept));
      settings.hmc_step = std::exp(log_hmc_step);
      settings.kappa_step = std::exp(log_kappa_step);
      settings.hyper_step = std::exp(log_hyper_step);
    } else {
      ++post_iters;
      hmc_acc_sum += stats.hmc_rate;
      kappa_acc_sum += stats.kappa_rate;
      hyper_acc_n += stats.hyper_accept;
      rho_acc_n += stats.rho_accept;
      total_shrinks += stats.ess_shrinks;
    }

    if (it >= settings.burnin &&
        (it - settings.burnin + 1) % settings.thin == 0 &&
        next_draw < n_draws) {
      for (std::size_t c = 0; c < out.beta_cols.size(); ++c) {
        const auto [unit, period] = out.beta_cols[c];
        out.beta(next_draw, c) = state.beta(unit, period, data);
      }
      for (std::size_t c = 0; c < out.case_cols.size(); ++c) {
        const auto [t, j] = out.case_cols[c];
        const CaseParams& cp = state.cases[t][j];
        out.psi(next_draw, c) = cp.psi;
        out.zeta(next_draw, c) = cp.zeta;
        out.kappa(next_draw, c) = cp.kappa;
      }
      out.hyper(next_draw, 0) = state.hyper.mu;
      out.hyper(next_draw, 1) = state.hyper.rho;
      out.hyper(next_draw, 2) = state.hyper.tau2;
      out.hyper(next_draw, 3) = state.hyper.varsigma;
      out.hyper(next_draw, 4) = state.lambda;
      ++next_draw;
    }

    if (progress && ((it + 1) % report_every == 0 || it + 1 == settings.iterations)) {
      std::cerr << "[chain " << chain_index << "] iter " << (it + 1) << "/"
                << settings.iterations << " acc: hmc " << stats.hmc_rate
                << " kappa " << stats.kappa_rate << " hyper "
                << stats.hyper_accept << " rho " << stats.rho_accept << "\n";
    }
  }

  if (post_iters > 0) {
    out.acceptance.hmc = hmc_acc_sum / post_iters;
    out.acceptance.kappa = kappa_acc_sum / post_iters;
    out.acceptance.hyper = static_cast<double>(hyper_acc_n) / post_iters;
    out.acceptance.rho = static_cast<double>(rho_acc_n) / post_iters;
    out.acceptance.ess_avg_shrinks =
        static_cast<double>(total_shrinks) / (post_iters * data.n_units());
  }
  out.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return out;
}

VoteDataset synth_votes_from_truth(const TruthRecord& truth,
                                   double missing_rate, RngStream& rng) {
  std::vector<VoteRow> rows;
  const int I = static_cast<int>(truth.units.size());
  const int T = static_cast<int>(truth.periods.size());
  for (int i = 0; i < I; ++i) {
    for (int t = 0; t < T; ++t) {
      for (std::size_t j = 0; j < truth.item_labels[t].size(); ++j) {
        if (missing_rate > 0.0 && rng.uniform() < missing_rate) continue;
        CaseParams cp{truth.psi[t][j], truth.zeta[t][j], truth.kappa[t][j]};
        const double theta = vote_prob(truth.beta[i][t], cp);
        const int y = rng.uniform() < theta ? 1 : 0;
        rows.push_back(VoteRow{truth.units[i], truth.periods[t],
                               truth.item_labels[t][j], std::to_string(y), 0});
      }
    }
  }
  return VoteDataset::from_rows(rows);
}

std::pair<VoteDataset, TruthRecord> generate_synthetic(const SynthConfig& spec,
                                                       RngStream& rng) {
  TruthRecord truth;
  auto label = [](const char* prefix, int k, int width) {
    std::ostringstream s;
    s << prefix;
    std::string num = std::to_string(k + 1);
    while (static_cast<int>(num.size()) < width) num = "0" + num;
    s << num;
    return s.str();
  };
  const int uw = static_cast<int>(std::to_string(spec.units).size());
  const int tw = static_cast<int>(std::to_string(spec.periods).size());
  const int jw = static_cast<int>(std::to_string(spec.items_per_period).size());
  for (int i = 0; i < spec.units; ++i) truth.units.push_back(label("u", i, uw));
  for (int t = 0; t < spec.periods; ++t) {
    truth.periods.push_back(label("t", t, tw));
  }
  truth.item_labels.resize(spec.periods);
  for (int t = 0; t < spec.periods; ++t) {
    for (int j = 0; j < spec.items_per_period; ++j) {
      truth.item_labels[t].push_back(label("c", j, jw));
    }
  }

  truth.hyper = ProcessHyper{spec.mu, spec.rho, spec.tau2, spec.varsigma};
  truth.lambda = spec.kappa_mean;
  truth.beta.resize(spec.units);
  for (int i = 0; i < spec.units; ++i) {
    const AuxPath path = simulate_aux_path(truth.hyper, spec.periods, rng);
    truth.beta[i] = derive_betas(path, truth.hyper.mu).beta;
  }
  truth.psi.resize(spec.periods);
  truth.zeta.resize(spec.periods);
  truth.kappa.resize(spec.periods);
  for (int t = 0; t < spec.periods; ++t) {
    for (int j = 0; j < spec.items_per_period; ++j) {
      truth.psi[t].push_back(rng.uniform(-kPi, kPi));
      truth.zeta[t].push_back(rng.uniform(-kPi, kPi));
      truth.kappa[t].push_back(rng.exponential(spec.kappa_mean));
    }
  }

  VoteDataset data = synth_votes_from_truth(truth, spec.missing_rate, rng);
  return {std::move(data), std::move(truth)};
}

double total_loglik(const ModelState& state, const VoteDataset& data) {
  double ll = 0.0;
  for (int i = 0; i < data.n_units(); ++i) ll += unit_loglik(state, i, data);
  return ll;
}

}  // namespace circdfm
