#include "circdfm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "circdfm/special.hpp"

namespace circdfm {

namespace {

double clamp_prob(double p) { return std::clamp(p, kProbEps, 1.0 - kProbEps); }

double log_sum_exp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

double sample_variance(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / (n - 1.0);
}

// Midranks of a vector (average rank across ties), 1-based.
std::vector<double> midranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double vm_log_density(double angle, double mean, double conc) {
  return conc * std::cos(angle - mean) - log_bessel_i0(conc) -
         std::log(kTwoPi);
}

}  // namespace

WaicResult waic_period(const ChainOutput& draws, const VoteDataset& data,
                       int period) {
  const int S = draws.n_draws();
  if (S < 2) throw ValidationError("waic_period: need at least 2 draws");

  // group the period's observed votes by unit
  std::vector<std::vector<std::pair<int, std::uint8_t>>> by_unit(
      data.n_units());
  for (int j = 0; j < data.n_items(period); ++j) {
    for (const auto& [unit, y] : data.item_votes(period, j)) {
      by_unit[unit].emplace_back(j, y);
    }
  }

  WaicResult res;
  bool any = false;
  // case column offset of this period (case_cols are laid out per period)
  const int col0 = draws.case_col(period, 0);
  for (int i = 0; i < data.n_units(); ++i) {
    if (by_unit[i].empty()) continue;
    any = true;
    if (col0 < 0) {
      throw ValidationError("waic_period: draws lack this period's items");
    }
    const int bcol = draws.beta_col(i, period);
    if (bcol < 0) {
      throw ValidationError("waic_period: draws lack a path for a voting unit");
    }
    std::vector<double> ll(S, 0.0);
    for (int s = 0; s < S; ++s) {
      const double beta = draws.beta(s, bcol);
      double acc = 0.0;
      for (const auto& [j, y] : by_unit[i]) {
        const CaseParams cp{draws.psi(s, col0 + j), draws.zeta(s, col0 + j),
                            draws.kappa(s, col0 + j)};
        const double theta = clamp_prob(vote_prob(beta, cp));
        acc += y ? std::log(theta) : std::log1p(-theta);
      }
      ll[s] = acc;
    }
    const double lppd_i = log_sum_exp(ll) - std::log(static_cast<double>(S));
    const double pen_i = sample_variance(ll);
    res.lppd += lppd_i;
    res.penalty += pen_i;
  }
  if (!any) {
    return WaicResult{0.0, 0.0, 0.0, false};
  }
  res.waic = -2.0 * (res.lppd - res.penalty);
  return res;
}

std::vector<int> unfold_ranks(std::span<const double> means,
                              std::span<const std::string> unit_ids) {
  if (means.size() != unit_ids.size()) {
    throw ValidationError("unfold_ranks: means and unit ids differ in length");
  }
  for (double m : means) {
    if (!std::isfinite(m)) {
      throw ValidationError("unfold_ranks: undefined circular mean");
    }
  }
  const std::size_t n = means.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (means[a] != means[b]) return means[a] < means[b];
    return unit_ids[a] < unit_ids[b];
  });
  std::vector<int> ranks(n);
  for (std::size_t r = 0; r < n; ++r) {
    ranks[order[r]] = static_cast<int>(r) + 1;
  }
  return ranks;
}

double spearman(std::span<const double> ranks_a,
                std::span<const double> ranks_b) {
  if (ranks_a.size() != ranks_b.size()) {
    throw ValidationError("spearman: length mismatch");
  }
  if (ranks_a.size() < 2) {
    throw ValidationError("spearman: need at least 2 entries");
  }
  const std::vector<double> ra = midranks(ranks_a);
  const std::vector<double> rb = midranks(ranks_b);
  const double n = static_cast<double>(ra.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return sab / std::sqrt(saa * sbb);
}

double vm_concentration_from_resultant(double rbar) {
  const double r = std::clamp(rbar, 0.0, 1.0 - 1e-12);
  double k;
  if (r < 0.53) {
    k = 2.0 * r + r * r * r + 5.0 * r * r * r * r * r / 6.0;
  } else if (r < 0.85) {
    k = -0.4 + 1.39 * r + 0.43 / (1.0 - r);
  } else {
    k = 1.0 / (r * r * r - 4.0 * r * r + 3.0 * r);
  }
  return std::clamp(k, 1e-8, 1e8);
}

VonMisesMixture vm_mixture_fit(std::span<const double> angles, int K,
                               RngStream& rng) {
  const int n = static_cast<int>(angles.size());
  if (K < 1) throw ValidationError("vm_mixture_fit: K must be >= 1");
  if (n < K) throw ValidationError("vm_mixture_fit: need at least K angles");

  constexpr int kRestarts = 10;
  constexpr int kMaxIter = 500;
  constexpr double kTol = 1e-8;

  VonMisesMixture best;
  best.loglik = -std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < kRestarts; ++restart) {
    VonMisesMixture fit;
    fit.k = K;
    fit.weights.assign(K, 1.0 / K);
    fit.concentrations.assign(K, 2.0);
    // distinct data points as initial means
    std::vector<int> picks;
    while (static_cast<int>(picks.size()) < K) {
      const int c = static_cast<int>(rng.uniform_int(n));
      if (std::find(picks.begin(), picks.end(), c) == picks.end()) {
        picks.push_back(c);
      }
    }
    fit.means.clear();
    for (int c : picks) fit.means.push_back(angles[c]);

    Eigen::MatrixXd resp(n, K);
    double prev_ll = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < kMaxIter; ++iter) {
      // E step in log space
      double ll = 0.0;
      for (int i = 0; i < n; ++i) {
        std::vector<double> lk(K);
        for (int c = 0; c < K; ++c) {
          lk[c] = std::log(std::max(fit.weights[c], 1e-300)) +
                  vm_log_density(angles[i], fit.means[c],
                                 fit.concentrations[c]);
        }
        const double lse = log_sum_exp(lk);
        ll += lse;
        for (int c = 0; c < K; ++c) resp(i, c) = std::exp(lk[c] - lse);
      }
      if (iter > 0 && ll + 1e-8 * (1.0 + std::fabs(ll)) < prev_ll) {
        throw std::runtime_error("vm_mixture_fit: EM log-likelihood decreased");
      }
      const bool converged = iter > 0 && (ll - prev_ll) < kTol;
      prev_ll = ll;
      fit.loglik = ll;
      if (converged) break;

      // M step
      for (int c = 0; c < K; ++c) {
        double wsum = 0.0, sc = 0.0, ss = 0.0;
        for (int i = 0; i < n; ++i) {
          wsum += resp(i, c);
          sc += resp(i, c) * std::cos(angles[i]);
          ss += resp(i, c) * std::sin(angles[i]);
        }
        fit.weights[c] = wsum / n;
        if (wsum < 1e-12) continue;  // dead component keeps its parameters
        fit.means[c] = atan2_angle(sc, ss);
        const double rbar = std::hypot(sc, ss) / wsum;
        fit.concentrations[c] = vm_concentration_from_resultant(rbar);
      }
    }
    if (fit.loglik > best.loglik) best = fit;
  }
  return best;
}

Eigen::MatrixXd vm_mixture_responsibilities(const VonMisesMixture& fit,
                                            std::span<const double> angles) {
  const int n = static_cast<int>(angles.size());
  Eigen::MatrixXd resp(n, fit.k);
  for (int i = 0; i < n; ++i) {
    std::vector<double> lk(fit.k);
    for (int c = 0; c < fit.k; ++c) {
      lk[c] = std::log(std::max(fit.weights[c], 1e-300)) +
              vm_log_density(angles[i], fit.means[c], fit.concentrations[c]);
    }
    const double lse = log_sum_exp(lk);
    for (int c = 0; c < fit.k; ++c) resp(i, c) = std::exp(lk[c] - lse);
  }
  return resp;
}

ClusterResult bic_select(std::span<const double> angles, int k_min, int k_max,
                         RngStream& rng) {
  const int n = static_cast<int>(angles.size());
  ClusterResult res;
  res.k_min = k_min;
  if (k_min < 1 || k_max < k_min) {
    throw ValidationError("bic_select: invalid component range");
  }
  if (n < k_max) {
    res.warnings.push_back("only " + std::to_string(n) +
                           " angles; shrinking k_max from " +
                           std::to_string(k_max));
    k_max = n;
    if (k_max < k_min) {
      throw ValidationError("bic_select: fewer angles than k_min components");
    }
  }
  double best_bic = std::numeric_limits<double>::infinity();
  for (int K = k_min; K <= k_max; ++K) {
    const VonMisesMixture fit = vm_mixture_fit(angles, K, rng);
    const double p = 3.0 * K - 1.0;  // free parameters
    const double bic = -2.0 * fit.loglik + p * std::log(static_cast<double>(n));
    res.bic.push_back(bic);
    if (bic < best_bic) {
      best_bic = bic;
      res.k = K;
      res.fit = fit;
    }
  }
  res.responsibilities = vm_mixture_responsibilities(res.fit, angles);
  return res;
}

}  // namespace circdfm
