#pragma once

#include "kurtord/distributions.hpp"

#include <vector>

namespace kurtord {

struct SkewnessValue {
  enum class Kind { density_based, mode_based };
  double value;
  Kind kind;
  double p = 0.0;         // level for density_based
  bool boundary = false;  // mode_based with the mode at a support edge
};

/// f'(F^{-1}(p)) / f(F^{-1}(p))^2. Throws std::domain_error for p outside
/// (0, 1) and std::range_error when the density underflows.
SkewnessValue gamma_d(const Distribution& f, double p);

/// 1 - 2 F(M_F). Boundary modes give +-1 with `boundary` set; a flat
/// density throws std::domain_error.
SkewnessValue gamma_mode(const Distribution& f);

struct TransitivitySetTag {
  enum class Kind { density, mode };
  Kind kind;
  double p = 0.5;        // density: level
  double t = 0.0;        // density: common value
  double p_tilde = 0.0;  // mode: common value of gamma_mode

  static TransitivitySetTag density(double p, double t) { return {Kind::density, p, t, 0.0}; }
  static TransitivitySetTag mode(double p_tilde) { return {Kind::mode, 0.5, 0.0, p_tilde}; }
};

/// True iff every member's functional equals the tag's constant within 1e-8.
bool same_transitivity_set(const std::vector<Distribution>& fs, const TransitivitySetTag& tag);

/// Quantile kurtosis with 0 < alpha < eta < 1/2.
double kappa_q(const Distribution& f, double alpha, double eta);

/// F(2/3 F^{-1}(q) + 1/3 F^{-1}(1 - q)).
double eta_f(const Distribution& f, double q);

/// Kurtosis comparison of G against F with inner levels eta_F; 0 < alpha < 1/2.
double kappa_qf(const Distribution& f, const Distribution& g, double alpha);

}  // namespace kurtord
