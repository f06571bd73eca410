#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "circdfm/circular_process.hpp"
#include "testutil.hpp"

using namespace circdfm;

TEST_CASE("atan2 angle transform branches") {
  CHECK(atan2_angle(1.0, 0.0) == 0.0);
  CHECK(atan2_angle(0.0, 1.0) == doctest::Approx(kPi / 2));
  CHECK(atan2_angle(-1.0, 0.0) == doctest::Approx(-kPi));  // wrapped from pi
  CHECK(atan2_angle(-1.0, -1e-12) < 0.0);                  // v<0, w<0 branch
  CHECK(atan2_angle(1.0, -1.0) == doctest::Approx(-kPi / 4));
  CHECK_THROWS_AS(atan2_angle(0.0, 0.0), ValidationError);
  // branch structure: arctan(w/v) (+/- pi) against the piecewise definition
  for (double v : {0.3, -0.3}) {
    for (double w : {0.7, -0.7}) {
      double want = std::atan(w / v);
      if (v < 0.0 && w >= 0.0) want += kPi;
      if (v < 0.0 && w < 0.0) want -= kPi;
      CHECK(atan2_angle(v, w) == doctest::Approx(want).epsilon(1e-14));
    }
  }
}

TEST_CASE("precision matrix pattern and inverse") {
  const Eigen::MatrixXd id = build_precision(0.0, 3);
  CHECK(id.isApprox(Eigen::MatrixXd::Identity(3, 3), 1e-15));

  const Eigen::MatrixXd p2 = build_precision(0.5, 2);
  CHECK(p2(0, 0) == 1.0);
  CHECK(p2(1, 1) == 1.0);
  CHECK(p2(0, 1) == -0.5);
  CHECK(p2(1, 0) == -0.5);

  // dense inversion oracle: inverse is the AR(1) covariance rho^|s-t|/(1-rho^2)
  for (double rho : {-0.7, 0.2, 0.9}) {
    const int T = 4;
    const Eigen::MatrixXd omega = build_precision(rho, T);
    const Eigen::MatrixXd cov = omega.inverse();
    for (int s = 0; s < T; ++s) {
      for (int t = 0; t < T; ++t) {
        CHECK(cov(s, t) == doctest::Approx(std::pow(rho, std::abs(s - t)) /
                                           (1.0 - rho * rho))
                               .epsilon(1e-10));
      }
    }
  }

  // T = 1 keeps the stationary precision
  const Eigen::MatrixXd p1 = build_precision(0.6, 1);
  CHECK(p1(0, 0) == doctest::Approx(1.0 - 0.36));
}

TEST_CASE("precision matrix is positive definite and matches the quadratic form") {
  RngStream rng(3);
  for (double rho : {-0.95, -0.3, 0.0, 0.5, 0.99}) {
    for (int T : {1, 2, 5, 8}) {
      const Eigen::MatrixXd omega = build_precision(rho, T);
      Eigen::LLT<Eigen::MatrixXd> llt(omega);
      CHECK(llt.info() == Eigen::Success);
      Eigen::VectorXd x(T);
      for (int t = 0; t < T; ++t) x(t) = rng.normal();
      CHECK(precision_quadratic_form(rho, x) ==
            doctest::Approx(x.dot(omega * x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("path density: quadratic form equals the AR transition product") {
  // log-kernel via Omega == stationary initial + transitions, T <= 6
  RngStream rng(9);
  const ProcessHyper h{2.0, 0.8, 0.49, 1.0};
  const double tau = std::sqrt(h.tau2);
  for (int T : {1, 2, 4, 6}) {
    Eigen::VectorXd x(T);
    for (int t = 0; t < T; ++t) x(t) = rng.normal(0.0, 2.0);
    const double q = precision_quadratic_form(h.rho, x);
    const double log_kernel_omega =
        -0.5 * q / h.tau2 + 0.5 * std::log1p(-h.rho * h.rho) -
        T * std::log(tau) - 0.5 * T * std::log(2.0 * kPi);
    double log_seq = -0.5 * x(0) * x(0) * (1.0 - h.rho * h.rho) / h.tau2 +
                     0.5 * std::log1p(-h.rho * h.rho) - std::log(tau) -
                     0.5 * std::log(2.0 * kPi);
    for (int t = 1; t < T; ++t) {
      const double resid = x(t) - h.rho * x(t - 1);
      log_seq += -0.5 * resid * resid / h.tau2 - std::log(tau) -
                 0.5 * std::log(2.0 * kPi);
    }
    CHECK(log_kernel_omega == doctest::Approx(log_seq).epsilon(1e-10));
  }
}

TEST_CASE("aux path simulation hits the stationary moments") {
  const ProcessHyper h{1.0, 0.95, 0.25, 1.0};
  CHECK(stationary_sd_v(h) * stationary_sd_v(h) ==
        doctest::Approx(0.25 / (1.0 - 0.9025)).epsilon(1e-12));

  RngStream rng(21);
  // lag-1 autocorrelation over many short paths
  std::vector<double> first, second;
  for (int i = 0; i < 100000; ++i) {
    const AuxPath p = simulate_aux_path(h, 2, rng);
    first.push_back(p.z(0, 0));
    second.push_back(p.z(1, 0));
  }
  double num = 0.0, den = 0.0;
  const double m1 = testutil::mean(first), m2 = testutil::mean(second);
  for (std::size_t i = 0; i < first.size(); ++i) {
    num += (first[i] - m1) * (second[i] - m2);
    den += (first[i] - m1) * (first[i] - m1);
  }
  CHECK(num / den == doctest::Approx(0.95).epsilon(0.0105));
  CHECK(testutil::variance(first) ==
        doctest::Approx(0.25 / (1.0 - 0.9025)).epsilon(0.03));
}

TEST_CASE("tau -> 0 limit gives a constant path") {
  RngStream rng(4);
  const ProcessHyper h{2.5, 0.9, 1e-18, 1.0};
  const AuxPath p = simulate_aux_path(h, 6, rng);
  for (int t = 0; t < 6; ++t) {
    CHECK(std::fabs(p.z(t, 0)) < 1e-7);  // v == mu after centering
    CHECK(std::fabs(p.z(t, 1)) < 1e-7);  // w == 0
  }
}

TEST_CASE("matrix normal draw: row covariance and independent columns") {
  const ProcessHyper h{0.0, 0.6, 0.8, 1.7};
  RngStream rng(99);
  const int T = 3;
  const int n = 100000;
  Eigen::MatrixXd sum_outer = Eigen::MatrixXd::Zero(T, T);
  double cross01 = 0.0;
  std::vector<double> col0_first, col1_first;
  for (int k = 0; k < n; ++k) {
    const Eigen::MatrixX2d u = sample_matrix_normal(h, T, rng);
    sum_outer += u.col(0) * u.col(0).transpose() / h.tau2;
    sum_outer += u.col(1) * u.col(1).transpose() / (h.varsigma * h.tau2);
    cross01 += u(0, 0) * u(0, 1);
    col0_first.push_back(u(0, 0));
    col1_first.push_back(u(0, 1));
  }
  const Eigen::MatrixXd emp = sum_outer / (2.0 * n);
  const Eigen::MatrixXd want = build_precision(h.rho, T).inverse();
  for (int s = 0; s < T; ++s) {
    for (int t = 0; t < T; ++t) {
      // 3 Monte Carlo standard errors (se of a covariance entry is about
      // sqrt((v_ss v_tt + v_st^2) / (2n)) in row-scale units)
      const double se = std::sqrt(
          (want(s, s) * want(t, t) + want(s, t) * want(s, t)) / (2.0 * n));
      CHECK(std::fabs(emp(s, t) - want(s, t)) < 3.0 * se);
    }
  }
  // columns uncorrelated
  const double r = (cross01 / n) /
                   (std::sqrt(testutil::variance(col0_first)) *
                    std::sqrt(testutil::variance(col1_first)));
  CHECK(std::fabs(r) < 0.01);

  // rho = 0, T = 1: two independent normals with variances tau2, vs*tau2
  const ProcessHyper h0{0.0, 0.0, 2.0, 0.5};
  std::vector<double> a, b;
  for (int k = 0; k < 50000; ++k) {
    const Eigen::MatrixX2d u = sample_matrix_normal(h0, 1, rng);
    a.push_back(u(0, 0));
    b.push_back(u(0, 1));
  }
  CHECK(testutil::variance(a) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(testutil::variance(b) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("stationary density: uniform case and normalization") {
  // mu1 = mu2 = 0 with equal scales is rotation invariant
  const ProcessHyper sym{1e-300, 0.5, 1.0, 1.0};
  for (double beta : {-3.0, -1.0, 0.0, 2.5}) {
    CHECK(stationary_density(beta, sym) ==
          doctest::Approx(1.0 / kTwoPi).epsilon(1e-9));
  }

  const ProcessHyper h{3.0, 0.9, 1.0, 1.0};
  const double mass = testutil::adaptive_simpson(
      [&](double b) { return stationary_density(b, h); }, -kPi, kPi, 1e-11);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("stationary density becomes bimodal when tau1/tau2 >> 1") {
  // tau1 = 8, tau2 = 0.5: modes near 0 and +-pi
  const double tau1 = 8.0, tau2 = 0.5;
  const ProcessHyper h{10.0, 0.95, tau1 * tau1, (tau2 * tau2) / (tau1 * tau1)};
  const double at0 = stationary_density(0.0, h);
  const double at_pi = stationary_density(kPi - 1e-9, h);
  const double at_mid = stationary_density(kPi / 2, h);
  CHECK(at0 > at_mid * 3.0);
  CHECK(at_pi > at_mid * 3.0);
}

TEST_CASE("long chain marginal matches the stationary density") {
  const ProcessHyper h{1.0, 0.5, 1.0, 0.49};
  // cumulative of the stationary density on a grid
  const int G = 2048;
  std::vector<double> grid(G + 1), cdf(G + 1, 0.0);
  for (int i = 0; i <= G; ++i) grid[i] = -kPi + kTwoPi * i / G;
  for (int i = 1; i <= G; ++i) {
    const double a = grid[i - 1], b = grid[i];
    cdf[i] = cdf[i - 1] + 0.5 * (stationary_density(a, h) +
                                 stationary_density(b, h)) *
                              (b - a);
  }
  for (double& c : cdf) c /= cdf[G];
  const auto cdf_fn = [&](double x) {
    const double pos = (x + kPi) / kTwoPi * G;
    const int lo = std::clamp(static_cast<int>(pos), 0, G - 1);
    const double frac = pos - lo;
    return cdf[lo] + frac * (cdf[lo + 1] - cdf[lo]);
  };

  RngStream rng(31);
  const int n = 100000;
  const AuxPath chain = simulate_aux_path(h, n, rng);
  std::vector<double> angles(n);
  for (int t = 0; t < n; ++t) {
    angles[t] = atan2_angle(chain.z(t, 0) + h.mu, chain.z(t, 1));
  }
  CHECK(testutil::ks_distance(angles, cdf_fn) < 0.01);
}

TEST_CASE("prior beta simulation shapes") {
  RngStream rng(17);
  // tau1/tau2 >> 1: bimodal at 0 and pi
  {
    const double t1 = 8.0, t2 = 0.5;
    const ProcessHyper h{10.0, 0.95, t1 * t1, (t2 * t2) / (t1 * t1)};
    const auto draws = simulate_prior_betas(h, 1, 20000, rng);
    int near0 = 0, near_pi = 0, mid = 0;
    for (double b : draws) {
      const double d0 = geodesic_dist(b, 0.0);
      const double dp = geodesic_dist(b, kPi);
      if (d0 < 0.5) ++near0;
      if (dp < 0.5) ++near_pi;
      if (geodesic_dist(b, kPi / 2) < 0.25 || geodesic_dist(b, -kPi / 2) < 0.25)
        ++mid;
    }
    CHECK(near0 > 2000);
    CHECK(near_pi > 2000);
    CHECK(mid < near0 / 4);
  }
  // symmetric hyper: circular mean about zero
  {
    const ProcessHyper h{3.0, 0.9, 1.0, 1.0};
    const auto draws = simulate_prior_betas(h, 3, 20000, rng);
    CHECK(std::fabs(testutil::circular_mean(draws)) < 0.05);
  }
}
