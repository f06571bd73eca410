#include "circdfm/circular_process.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace circdfm {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

template <typename F>
double gl_panel(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double dx = half * kGlNodes[k];
    s += kGlWeights[k] * (f(mid + dx) + f(mid - dx));
  }
  return s * half;
}

}  // namespace

Eigen::MatrixXd build_precision(double rho, int T) {
  if (T < 1) throw std::invalid_argument("build_precision: T must be >= 1");
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(T, T);
  if (T == 1) {
    omega(0, 0) = 1.0 - rho * rho;
    return omega;
  }
  for (int t = 0; t < T; ++t) {
    omega(t, t) = (t == 0 || t == T - 1) ? 1.0 : 1.0 + rho * rho;
    if (t + 1 < T) {
      omega(t, t + 1) = -rho;
      omega(t + 1, t) = -rho;
    }
  }
  return omega;
}

double precision_quadratic_form(double rho, const Eigen::VectorXd& x) {
  const int T = static_cast<int>(x.size());
  if (T == 1) return (1.0 - rho * rho) * x(0) * x(0);
  // x' Omega x = sum_t (x_{t+1} - rho x_t)^2 + (1 - rho^2) x_1^2
  double q = (1.0 - rho * rho) * x(0) * x(0);
  for (int t = 0; t + 1 < T; ++t) {
    const double d = x(t + 1) - rho * x(t);
    q += d * d;
  }
  return q;
}

AuxPath simulate_aux_path(const ProcessHyper& hyper, int T, RngStream& rng) {
  if (T < 1) throw std::invalid_argument("simulate_aux_path: T must be >= 1");
  AuxPath path;
  path.z.resize(T, 2);
  const double sd_v = stationary_sd_v(hyper);
  const double sd_w = stationary_sd_w(hyper);
  const double tau_v = std::sqrt(hyper.tau2);
  const double tau_w = std::sqrt(hyper.varsigma * hyper.tau2);
  double v = hyper.mu + sd_v * rng.normal();
  double w = sd_w * rng.normal();
  path.z(0, 0) = v - hyper.mu;
  path.z(0, 1) = w;
  for (int t = 1; t < T; ++t) {
    v = hyper.mu + hyper.rho * (v - hyper.mu) + tau_v * rng.normal();
    w = hyper.rho * w + tau_w * rng.normal();
    path.z(t, 0) = v - hyper.mu;
    path.z(t, 1) = w;
  }
  return path;
}

Eigen::MatrixX2d sample_matrix_normal(const ProcessHyper& hyper, int T,
                                      RngStream& rng) {
  if (T < 1) throw std::invalid_argument("sample_matrix_normal: T must be >= 1");
  Eigen::MatrixX2d u(T, 2);
  const double sds[2] = {std::sqrt(hyper.tau2),
                         std::sqrt(hyper.varsigma * hyper.tau2)};
  const double stat_scale = 1.0 / std::sqrt(1.0 - hyper.rho * hyper.rho);
  for (int c = 0; c < 2; ++c) {
    double x = sds[c] * stat_scale * rng.normal();
    u(0, c) = x;
    for (int t = 1; t < T; ++t) {
      x = hyper.rho * x + sds[c] * rng.normal();
      u(t, c) = x;
    }
  }
  return u;
}

IdealPointPath derive_betas(const AuxPath& path, double mu) {
  IdealPointPath out;
  out.beta.resize(path.z.rows());
  for (int t = 0; t < path.z.rows(); ++t) {
    out.beta[t] = atan2_angle(path.z(t, 0) + mu, path.z(t, 1));
  }
  return out;
}

double stationary_density(double beta, const ProcessHyper& hyper) {
  const double s1 = stationary_sd_v(hyper);
  const double s2 = stationary_sd_w(hyper);
  const double mu1 = hyper.mu;
  const double mu2 = 0.0;
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);
  const auto integrand = [&](double r) {
    const double d1 = (r * cb - mu1) / s1;
    const double d2 = (r * sb - mu2) / s2;
    return r * std::exp(-0.5 * (d1 * d1 + d2 * d2));
  };
  const double r_center = std::sqrt(mu1 * mu1 + mu2 * mu2);
  const double s_max = std::max(s1, s2);
  const double s_min = std::min(s1, s2);
  const double r_max = r_center + 12.0 * s_max;
  const double panel = 0.5 * s_min;
  const int n_panels = std::max(1, static_cast<int>(std::ceil(r_max / panel)));
  double total = 0.0;
  for (int k = 0; k < n_panels; ++k) {
    const double a = r_max * k / n_panels;
    const double b = r_max * (k + 1) / n_panels;
    total += gl_panel(integrand, a, b);
  }
  return total / (kTwoPi * s1 * s2);
}

std::vector<double> simulate_prior_betas(const ProcessHyper& hyper, int T,
                                         int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("simulate_prior_betas: n must be >= 1");
  std::vector<double> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const AuxPath path = simulate_aux_path(hyper, T, rng);
    const int last = path.length() - 1;
    out.push_back(atan2_angle(path.z(last, 0) + hyper.mu, path.z(last, 1)));
  }
  return out;
}

}  // namespace circdfm
