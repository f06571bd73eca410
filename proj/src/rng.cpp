#include "circdfm/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "circdfm/angles.hpp"
#include "circdfm/special.hpp"

namespace circdfm {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32),
                    0x9e3779b9u};
  engine_.seed(seq);
}

double RngStream::uniform() {
  // 53-bit mantissa, in [0, 1)
  return (engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RngStream::normal() {
  // Box-Muller, un-cached
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double RngStream::normal(double mean, double sd) {
  return mean + sd * normal();
}

double RngStream::exponential(double mean) {
  return -mean * std::log(1.0 - uniform());
}

double RngStream::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::invalid_argument("gamma: shape and rate must be positive");
  }
  // Marsaglia-Tsang; shape < 1 handled by the boosting identity.
  if (shape < 1.0) {
    const double u = uniform();
    return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v / rate;
    }
  }
}

double RngStream::von_mises(double mean, double conc) {
  if (conc < 1e-10) return uniform(-kPi, kPi);
  // Best-Fisher (1979) wrapped-Cauchy envelope
  const double a = 1.0 + std::sqrt(1.0 + 4.0 * conc * conc);
  const double b = (a - std::sqrt(2.0 * a)) / (2.0 * conc);
  const double r = (1.0 + b * b) / (2.0 * b);
  for (;;) {
    const double u1 = uniform();
    const double z = std::cos(kPi * u1);
    const double f = (1.0 + r * z) / (r + z);
    const double c = conc * (r - f);
    const double u2 = uniform();
    if (c * (2.0 - c) - u2 > 0.0 ||
        std::log(c / u2) + 1.0 - c >= 0.0) {
      const double u3 = uniform();
      const double sign = (u3 - 0.5 >= 0.0) ? 1.0 : -1.0;
      return wrap_angle(sign * std::acos(f) + mean);
    }
  }
}

double RngStream::trunc_normal(double mean, double sd, double lo, double hi) {
  if (!(sd > 0.0) || !(lo < hi)) {
    throw std::invalid_argument("trunc_normal: require sd > 0 and lo < hi");
  }
  const double alpha = (lo - mean) / sd;
  const double beta = (hi - mean) / sd;
  // Work on the side with more resolution; mirror if the mass sits on the
  // right so that the CDF differences stay well conditioned.
  if (alpha + beta > 0.0) {
    const double pl = normal_cdf(-beta);
    const double ph = normal_cdf(-alpha);
    const double u = pl + (ph - pl) * uniform();
    double z = -normal_ppf(u);
    if (z < alpha) z = alpha;
    if (z > beta) z = beta;
    return mean + sd * z;
  }
  const double pl = normal_cdf(alpha);
  const double ph = normal_cdf(beta);
  const double u = pl + (ph - pl) * uniform();
  double z = normal_ppf(u);
  if (z < alpha) z = alpha;
  if (z > beta) z = beta;
  return mean + sd * z;
}

std::uint64_t RngStream::uniform_int(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_int: n must be positive");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    const std::uint64_t v = engine_();
    if (v < limit) return v % n;
  }
}

}  // namespace circdfm
