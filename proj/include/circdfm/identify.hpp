#ifndef CIRCDFM_IDENTIFY_HPP_
#define CIRCDFM_IDENTIFY_HPP_

#include <vector>

#include "circdfm/angles.hpp"
#include "circdfm/config.hpp"
#include "circdfm/mcmc.hpp"

namespace circdfm {

// Reflects the angles of one posterior draw (one row of the draw matrices),
// period by period, wherever the anchored unit's ideal point violates its
// required sign. The per-period vote likelihood is exactly invariant under
// this map.
void apply_reflection_draw(ChainOutput& draws, Eigen::Index row,
                           const std::vector<ResolvedAnchor>& anchors);

// Wraps all angles and applies the reflection map to every retained draw;
// marks the output as identified.
void apply_identification(ChainOutput& draws,
                          const std::vector<ResolvedAnchor>& anchors);

struct PathSummary {
  int unit = 0;
  int period = 0;
  double mean = 0.0;     // circular posterior mean
  double lo = 0.0;       // equal-tailed 95% interval, unfolded about mean
  double hi = 0.0;
  bool defined = true;   // false when the mean resultant is ~0
};

// Per-(unit, period) circular means and 95% credible intervals. Requires at
// least two draws.
std::vector<PathSummary> summarize_paths(const ChainOutput& draws);

}  // namespace circdfm

#endif  // CIRCDFM_IDENTIFY_HPP_
