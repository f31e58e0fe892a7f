#pragma once

// Standard normal helpers that stay accurate far into the tails.

namespace kurtord::normal {

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

/// log of the standard normal density.
inline double log_pdf(double x) noexcept { return -0.5 * x * x - kLogSqrt2Pi; }

/// log Phi(x), accurate for x down to about -1e150.
double log_cdf(double x) noexcept;

/// phi(x) / Phi(x), the inverse Mills ratio of the lower tail.
double hazard_lower(double x) noexcept;

/// Phi^{-1}(p) for p in (0, 1).
double quantile(double p);

/// Phi^{-1}(exp(log_p)) for log_p < 0, usable where exp(log_p) underflows.
double quantile_from_log(double log_p);

}  // namespace kurtord::normal
