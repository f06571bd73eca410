#ifndef CIRCDFM_ANGLES_HPP_
#define CIRCDFM_ANGLES_HPP_

#include <cmath>

#include "circdfm/errors.hpp"

namespace circdfm {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kPiSq = kPi * kPi;

// Map x to its representative in [-pi, pi).
inline double wrap_angle(double x) {
  if (!std::isfinite(x)) {
    throw ValidationError("wrap_angle: non-finite input");
  }
  double a = std::remainder(x, kTwoPi);  // lands in [-pi, pi]
  if (a >= kPi) a = -kPi;
  return a;
}

// Angle of the point (v, w): v plays the cosine coordinate, w the sine
// coordinate. Result in [-pi, pi); the origin has no angle.
inline double atan2_angle(double v, double w) {
  if (v == 0.0 && w == 0.0) {
    throw ValidationError("atan2_angle: undefined angle at the origin");
  }
  double a = std::atan2(w, v);
  if (a >= kPi) a = -kPi;
  return a;
}

// Smaller arc between two angles, in [0, pi].
inline double geodesic_dist(double a, double b) {
  // acos(cos(.)) is exact at the boundary values and immune to wrapping
  double c = std::cos(a - b);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

}  // namespace circdfm

#endif  // CIRCDFM_ANGLES_HPP_
