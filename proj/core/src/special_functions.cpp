#include "urllc/special_functions.hpp"

#include <cmath>

namespace urllc {

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double gaussian_phi(double x) {
  static const double inv_sqrt_2pi = 0.3989422804014326779;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double erfcx(double t) {
  if (t < 15.0) {
    return std::exp(t * t) * std::erfc(t);
  }
  // Asymptotic series: erfcx(t) ~ (1/(t sqrt(pi))) * sum_k (-1)^k (2k-1)!! / (2t^2)^k.
  // At t = 15 the truncation error is below 1e-12 relative.
  static const double inv_sqrt_pi = 0.5641895835477562869;
  const double z = 1.0 / (2.0 * t * t);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term *= -static_cast<double>(2 * k - 1) * z;
    sum += term;
  }
  return inv_sqrt_pi * sum / t;
}

double saddlepoint_b0(double x) {
  if (x == 0.0) return 0.0;
  // x e^{x^2/2} Q(x) = x * 0.5 * erfcx(x / sqrt 2)
  return x * 0.5 * erfcx(x / std::sqrt(2.0));
}

double softplus(double t) {
  if (t > 35.0) return t;
  if (t < -35.0) return std::exp(t);
  return std::log1p(std::exp(t));
}

double log_sum_exp(double a, double b) {
  const double m = a > b ? a : b;
  const double l = a > b ? b : a;
  return m + std::log1p(std::exp(l - m));
}

}  // namespace urllc
