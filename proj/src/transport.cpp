#include "kurtord/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kurtord {
namespace {

RDerivs derivs_at(const TransportMap& map, double t, double rt) {
  if (!map.g.support().contains(rt)) throw Unrepresentable("R(t) outside the support of G");
  // With a shared base B, R' = Z_F'(t) / Z_G'(R) and the B' factors never enter.
  const Base base = map.f.natural_base() == map.g.natural_base() ? map.f.natural_base() : Base::uniform;
  const LocalDensity lf = map.f.local(t, base);
  const LocalDensity lg = map.g.local(rt, base);

  RDerivs d{};
  d.t = t;
  d.r = rt;
  d.r1 = std::exp(lf.log_pdf - lg.log_pdf);
  const double r1 = d.r1;
  const double r1sq = r1 * r1;
  d.r2 = r1 * lf.score - lg.score * r1sq;
  d.scale2 = r1 * lf.score_scale + lg.score_scale * r1sq;
  d.r3 = r1 * lf.curvature - lg.curvature * r1sq * r1 - 3.0 * lg.score * r1 * d.r2;
  d.scale3 = r1 * lf.curvature_scale + lg.curvature_scale * r1sq * r1 +
             3.0 * std::abs(lg.score) * r1 * d.scale2 + 3.0 * lg.score_scale * r1 * std::abs(d.r2);

  if (!std::isfinite(d.r1) || !(d.r1 > 0.0) || !std::isfinite(d.r2) || !std::isfinite(d.r3) ||
      !std::isfinite(d.scale2) || !std::isfinite(d.scale3)) {
    // Density data that overflows, or whose products do, is a representation limit.
    const bool inputs_nan = std::isnan(lf.log_pdf) || std::isnan(lg.log_pdf) || std::isnan(lf.score) ||
                            std::isnan(lg.score) || std::isnan(lf.curvature) || std::isnan(lg.curvature);
    if (!inputs_nan) throw Unrepresentable("transport derivatives overflow double range");
    throw std::range_error("transport derivatives not representable");
  }
  return d;
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

double r(const TransportMap& map, double t) {
  return map.g.quantile(map.f.tail_level(t));
}

RDerivs r_derivs(const TransportMap& map, double t) {
  return derivs_at(map, t, r(map, t));
}

RDerivs r_derivs(const TransportMap& map, TailLevel level) {
  const double t = map.f.quantile(level);
  if (!map.f.support().contains(t)) throw Unrepresentable("quantile of F not interior");
  return derivs_at(map, t, map.g.quantile(level));
}

double delta(const TransportMap& map, double t) { return r(map, t) - t; }

ComposeResiduals compose_check(const Distribution& f, const Distribution& g, const Distribution& h,
                               double t) {
  const RDerivs fh = r_derivs(TransportMap{f, h}, t);
  const RDerivs fg = r_derivs(TransportMap{f, g}, t);
  const RDerivs gh = r_derivs(TransportMap{g, h}, fg.r);

  const double r = gh.r;
  const double r2 = gh.r2 * fg.r1 * fg.r1 + gh.r1 * fg.r2;
  const double r3 = gh.r3 * fg.r1 * fg.r1 * fg.r1 + 3.0 * gh.r2 * fg.r1 * fg.r2 + gh.r1 * fg.r3;
  return {rel_diff(fh.r, r), rel_diff(fh.r2, r2), rel_diff(fh.r3, r3)};
}

double inverse_r3(const TransportMap& fg, double t) {
  const double s = r(TransportMap{fg.g, fg.f}, t);
  const RDerivs d = r_derivs(fg, s);
  const double q = d.r2 / d.r1;
  return (3.0 * q * q - d.r3 / d.r1) / (d.r1 * d.r1 * d.r1);
}

std::vector<TransportPoint> sample(const TransportMap& map, const std::vector<GridPoint>& grid) {
  std::vector<TransportPoint> out;
  out.reserve(grid.size());
  for (const GridPoint& gp : grid) {
    TransportPoint pt{gp.level, gp.core, false, false, {}};
    try {
      pt.d = r_derivs(map, gp.level);
      pt.ok = true;
    } catch (const Unrepresentable&) {
    } catch (const std::exception&) {
      pt.failed = true;
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace kurtord
