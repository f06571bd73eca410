#ifndef CIRCDFM_RNG_HPP_
#define CIRCDFM_RNG_HPP_

#include <cstdint>
#include <random>

namespace circdfm {

// Seeded random stream with the handful of distributions the sampler needs.
// All generators are implemented on top of the raw engine so that draws are
// reproducible for a given (seed, stream) pair regardless of platform
// library details.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  double normal();                        // standard normal
  double normal(double mean, double sd);
  double exponential(double mean);
  double gamma(double shape, double rate);     // mean shape / rate
  double von_mises(double mean, double conc);  // angle in [-pi, pi)
  double trunc_normal(double mean, double sd, double lo, double hi);
  std::uint64_t uniform_int(std::uint64_t n);  // {0, ..., n-1}

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace circdfm

#endif  // CIRCDFM_RNG_HPP_
