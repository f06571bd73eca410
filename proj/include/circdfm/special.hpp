#ifndef CIRCDFM_SPECIAL_HPP_
#define CIRCDFM_SPECIAL_HPP_

namespace circdfm {

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation (Lentz). a, b > 0; x outside [0, 1] is clamped.
double reg_inc_beta(double a, double b, double x);

double log_beta(double a, double b);

// Standard normal CDF and its inverse (Wichura's AS 241, double precision).
double normal_cdf(double x);
double normal_ppf(double p);

// log I0(x) for x >= 0, safe against overflow for large arguments.
double log_bessel_i0(double x);

}  // namespace circdfm

#endif  // CIRCDFM_SPECIAL_HPP_
