#include "kurtord/normal.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <stdexcept>

namespace kurtord::normal {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// Continued fraction for Mills' ratio R(u) = (1 - Phi(u)) / phi(u), u large.
double mills_ratio_cf(double u) noexcept {
  double tail = u;
  for (int k = 60; k >= 1; --k) tail = u + k / tail;
  return 1.0 / tail;
}

}  // namespace

double log_cdf(double x) noexcept {
  if (std::isnan(x)) return x;
  if (x > 0.0) return std::log1p(-0.5 * std::erfc(x / kSqrt2));
  if (x > -20.0) return std::log(0.5 * std::erfc(-x / kSqrt2));
  return log_pdf(x) + std::log(mills_ratio_cf(-x));
}

double hazard_lower(double x) noexcept {
  if (x < -20.0) return 1.0 / mills_ratio_cf(-x);
  return std::exp(log_pdf(x) - log_cdf(x));
}

double quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal quantile: p must lie in (0, 1)");
  if (p == 0.5) return 0.0;
  return -kSqrt2 * boost::math::erfc_inv(2.0 * p);
}

double quantile_from_log(double log_p) {
  if (!(log_p < 0.0)) throw std::domain_error("normal quantile: log p must be negative");
  if (log_p > -700.0) return quantile(std::exp(log_p));
  // Newton on log Phi(z) = log_p; log Phi is concave so iterates stay on one side.
  const double y = -2.0 * log_p;
  double z = -std::sqrt(y - std::log(2.0 * M_PI * y));
  for (int it = 0; it < 50; ++it) {
    const double step = (log_cdf(z) - log_p) / hazard_lower(z);
    z -= step;
    if (std::abs(step) <= 4e-16 * std::abs(z)) break;
  }
  return z;
}

}  // namespace kurtord::normal
