#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "circdfm/rng.hpp"
#include "circdfm/special.hpp"
#include "testutil.hpp"

using namespace circdfm;

TEST_CASE("regularized incomplete beta basics") {
  CHECK(reg_inc_beta(2.0, 2.0, 0.0) == 0.0);
  CHECK(reg_inc_beta(2.0, 2.0, 1.0) == 1.0);
  CHECK(reg_inc_beta(3.0, 3.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  // I_x(1,1) is the identity
  for (double x : {0.1, 0.25, 0.8}) {
    CHECK(reg_inc_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-12));
  }
  // symmetry I_x(a,a) = 1 - I_{1-x}(a,a)
  for (double a : {0.5, 2.0, 17.0}) {
    for (double x : {0.05, 0.3, 0.47}) {
      CHECK(reg_inc_beta(a, a, x) ==
            doctest::Approx(1.0 - reg_inc_beta(a, a, 1.0 - x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("incomplete beta against quadrature of its density") {
  // the oracle integrates under x = (1 - cos(phi))/2, which removes the
  // endpoint singularities for a < 1; map x to the scaled support
  for (double a : {0.7, 1.0, 4.0, 35.0}) {
    for (double x : {0.02, 0.2, 0.5, 0.77, 0.98}) {
      const double z = (2.0 * x - 1.0) * circdfm::kPiSq;
      const double want = testutil::link_cdf_quadrature_oracle(z, a);
      CHECK(reg_inc_beta(a, a, x) == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("normal cdf and ppf are inverse") {
  for (double x : {-6.0, -2.5, -0.3, 0.0, 0.9, 4.2}) {
    CHECK(normal_ppf(normal_cdf(x)) == doctest::Approx(x).epsilon(1e-10));
  }
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
}

TEST_CASE("log bessel I0 continuity at the asymptotic switch") {
  const double below = log_bessel_i0(49.999);
  const double above = log_bessel_i0(50.001);
  CHECK(std::fabs(above - below) < 1e-2);
  CHECK(log_bessel_i0(0.0) == doctest::Approx(0.0));
  // exact small-argument values via std::cyl_bessel_i
  CHECK(log_bessel_i0(2.5) ==
        doctest::Approx(std::log(std::cyl_bessel_i(0.0, 2.5))).epsilon(1e-12));
  // large argument: leading asymptotics
  const double x = 500.0;
  CHECK(log_bessel_i0(x) ==
        doctest::Approx(x - 0.5 * std::log(2.0 * M_PI * x) +
                        std::log1p(1.0 / (8.0 * x)))
            .epsilon(1e-6));
}

TEST_CASE("truncated normal sampler stays inside and matches its cdf") {
  RngStream rng(2024);
  std::vector<double> draws;
  const double m = 0.9, s = 0.03, lo = 0.0, hi = 1.0;
  for (int i = 0; i < 20000; ++i) {
    const double x = rng.trunc_normal(m, s, lo, hi);
    CHECK(x >= lo);
    CHECK(x <= hi);
    draws.push_back(x);
  }
  const double plo = normal_cdf((lo - m) / s);
  const double phi = normal_cdf((hi - m) / s);
  const double ks = testutil::ks_distance(draws, [&](double x) {
    return (normal_cdf((x - m) / s) - plo) / (phi - plo);
  });
  CHECK(ks < 0.015);
}

TEST_CASE("gamma and von mises samplers match their laws") {
  RngStream rng(7);
  std::vector<double> g;
  for (int i = 0; i < 20000; ++i) g.push_back(rng.gamma(3.0, 2.0));
  CHECK(testutil::mean(g) == doctest::Approx(1.5).epsilon(0.03));
  CHECK(testutil::variance(g) == doctest::Approx(0.75).epsilon(0.08));

  std::vector<double> vm;
  for (int i = 0; i < 20000; ++i) vm.push_back(rng.von_mises(0.7, 5.0));
  CHECK(testutil::circular_mean(vm) == doctest::Approx(0.7).epsilon(0.05));
  // resultant length should match A(5) = I1(5)/I0(5)
  double c = 0.0;
  for (double a : vm) c += std::cos(a - 0.7);
  const double a5 = std::cyl_bessel_i(1.0, 5.0) / std::cyl_bessel_i(0.0, 5.0);
  CHECK(c / vm.size() == doctest::Approx(a5).epsilon(0.02));
}
