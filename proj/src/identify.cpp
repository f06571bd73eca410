#include "circdfm/identify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace circdfm {

namespace {

// Quantile with linear interpolation between order statistics.
double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * (static_cast<double>(v.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

}  // namespace

void apply_reflection_draw(ChainOutput& draws, Eigen::Index row,
                           const std::vector<ResolvedAnchor>& anchors) {
  for (const ResolvedAnchor& a : anchors) {
    for (int t = a.period_lo; t <= a.period_hi; ++t) {
      const int anchor_col = draws.beta_col(a.unit, t);
      if (anchor_col < 0) continue;  // resolve_anchors rules this out
      const double b = draws.beta(row, anchor_col);
      const bool violated = a.positive ? (b < 0.0) : (b > 0.0);
      if (!violated) continue;
      for (std::size_t c = 0; c < draws.beta_cols.size(); ++c) {
        if (draws.beta_cols[c].second == t) {
          draws.beta(row, c) = wrap_angle(-draws.beta(row, c));
        }
      }
      for (std::size_t c = 0; c < draws.case_cols.size(); ++c) {
        if (draws.case_cols[c].first == t) {
          draws.psi(row, c) = wrap_angle(-draws.psi(row, c));
          draws.zeta(row, c) = wrap_angle(-draws.zeta(row, c));
        }
      }
    }
  }
}

void apply_identification(ChainOutput& draws,
                          const std::vector<ResolvedAnchor>& anchors) {
  for (Eigen::Index r = 0; r < draws.beta.rows(); ++r) {
    for (Eigen::Index c = 0; c < draws.beta.cols(); ++c) {
      draws.beta(r, c) = wrap_angle(draws.beta(r, c));
    }
    for (Eigen::Index c = 0; c < draws.psi.cols(); ++c) {
      draws.psi(r, c) = wrap_angle(draws.psi(r, c));
      draws.zeta(r, c) = wrap_angle(draws.zeta(r, c));
    }
    apply_reflection_draw(draws, r, anchors);
  }
  draws.identified = true;
}

std::vector<PathSummary> summarize_paths(const ChainOutput& draws) {
  const Eigen::Index n = draws.beta.rows();
  if (n < 2) {
    throw ValidationError("summarize_paths: need at least 2 draws");
  }
  std::vector<PathSummary> out;
  out.reserve(draws.beta_cols.size());
  for (std::size_t c = 0; c < draws.beta_cols.size(); ++c) {
    PathSummary s;
    s.unit = draws.beta_cols[c].first;
    s.period = draws.beta_cols[c].second;
    double mc = 0.0;
    double ms = 0.0;
    for (Eigen::Index r = 0; r < n; ++r) {
      mc += std::cos(draws.beta(r, c));
      ms += std::sin(draws.beta(r, c));
    }
    mc /= static_cast<double>(n);
    ms /= static_cast<double>(n);
    const double resultant = std::hypot(mc, ms);
    if (resultant < 1e-8) {
      s.defined = false;
      s.mean = s.lo = s.hi = std::numeric_limits<double>::quiet_NaN();
      out.push_back(s);
      continue;
    }
    s.mean = atan2_angle(mc, ms);
    std::vector<double> unfolded(n);
    for (Eigen::Index r = 0; r < n; ++r) {
      unfolded[r] = s.mean + wrap_angle(draws.beta(r, c) - s.mean);
    }
    s.lo = quantile(unfolded, 0.025);
    s.hi = quantile(unfolded, 0.975);
    out.push_back(s);
  }
  return out;
}

}  // namespace circdfm
