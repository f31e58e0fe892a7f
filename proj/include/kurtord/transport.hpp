#pragma once

#include "kurtord/distributions.hpp"
#include "kurtord/grid.hpp"

#include <stdexcept>
#include <vector>

namespace kurtord {

/// A level whose quantile rounds onto the support boundary, or whose
/// derivatives overflow double range.
struct Unrepresentable : std::domain_error {
  using std::domain_error::domain_error;
};

/// R = G^{-1} o F on the support of F.
struct TransportMap {
  Distribution f;
  Distribution g;
};

/// R and its first three derivatives at one point.
///
/// scale2 and scale3 bound the magnitude of the terms that are summed into
/// r2 and r3; they set the size of a numerical tie in sign tests.
struct RDerivs {
  double t;
  double r;
  double r1;
  double r2;
  double r3;
  double scale2;
  double scale3;
};

/// G^{-1}(F(t)). Throws std::domain_error outside the support of F.
double r(const TransportMap& map, double t);

/// Derivatives at t. Throws std::domain_error when t or R(t) is not interior
/// and std::range_error when a value is not finite. When F and G share a
/// non-uniform base the ratios are formed from Z_F' and Z_G'.
RDerivs r_derivs(const TransportMap& map, double t);

/// Derivatives at t = F^{-1}(level), with R = G^{-1}(level) taken directly.
RDerivs r_derivs(const TransportMap& map, TailLevel level);

/// R(t) - t.
double delta(const TransportMap& map, double t);

struct ComposeResiduals {
  double r;
  double r2;
  double r3;
};

/// Relative differences between R_FH, R_FH'', R_FH''' evaluated directly and
/// through R_FH = R_GH o R_FG.
ComposeResiduals compose_check(const Distribution& f, const Distribution& g, const Distribution& h,
                               double t);

/// R_GF'''(t) from derivatives of R_FG at s = R_GF(t):
/// (3 R_FG''(s)^2 - R_FG'''(s) R_FG'(s)) / R_FG'(s)^5.
double inverse_r3(const TransportMap& fg, double t);

/// One grid evaluation. When `ok` is false, `failed` separates numerical
/// failures from levels that are not representable in double.
struct TransportPoint {
  TailLevel level;
  bool core;
  bool ok;
  bool failed;
  RDerivs d;
};

std::vector<TransportPoint> sample(const TransportMap& map, const std::vector<GridPoint>& grid);

}  // namespace kurtord
