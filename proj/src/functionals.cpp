#include "kurtord/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace kurtord {
namespace {

void require_level(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error(std::string(what) + " must lie in (0, 1)");
}

double ratio(double num, double den) {
  if (!(std::abs(den) > 0.0) || !std::isfinite(den)) throw std::domain_error("degenerate quantile spread");
  return num / den;
}

}  // namespace

SkewnessValue gamma_d(const Distribution& f, double p) {
  require_level(p, "p");
  const LocalDensity d = f.local(f.quantile(p));
  const double v = d.score * std::exp(-d.log_pdf);
  if (!std::isfinite(v)) throw std::range_error("density underflow in gamma_d");
  return {v, SkewnessValue::Kind::density_based, p, false};
}

SkewnessValue gamma_mode(const Distribution& f) {
  const Mode m = mode(f);
  switch (m.kind) {
    case Mode::Kind::lower_boundary: return {1.0, SkewnessValue::Kind::mode_based, 0.0, true};
    case Mode::Kind::upper_boundary: return {-1.0, SkewnessValue::Kind::mode_based, 0.0, true};
    case Mode::Kind::flat: throw std::domain_error("density has no unique mode");
    case Mode::Kind::interior: break;
  }
  const TailLevel l = f.tail_level(m.location);
  const double mass = std::exp(l.log_mass);
  const double v = l.side == Tail::lower ? 1.0 - 2.0 * mass : 2.0 * mass - 1.0;
  return {v, SkewnessValue::Kind::mode_based, 0.0, false};
}

bool same_transitivity_set(const std::vector<Distribution>& fs, const TransitivitySetTag& tag) {
  constexpr double kTol = 1e-8;
  if (tag.kind == TransitivitySetTag::Kind::density) {
    require_level(tag.p, "tag level p");
    for (const Distribution& f : fs)
      if (!(std::abs(gamma_d(f, tag.p).value - tag.t) <= kTol)) return false;
    return true;
  }
  if (!(tag.p_tilde >= -1.0 && tag.p_tilde <= 1.0)) throw std::domain_error("tag p_tilde must lie in [-1, 1]");
  for (const Distribution& f : fs)
    if (!(std::abs(gamma_mode(f).value - tag.p_tilde) <= kTol)) return false;
  return true;
}

double kappa_q(const Distribution& f, double alpha, double eta) {
  if (!(alpha > 0.0 && alpha < eta && eta < 0.5)) throw std::domain_error("kappa_q needs 0 < alpha < eta < 1/2");
  const double qa = f.quantile(alpha), qa1 = f.quantile(1.0 - alpha);
  const double qe = f.quantile(eta), qe1 = f.quantile(1.0 - eta);
  return ratio(qa1 - 3.0 * qe1 + 3.0 * qe - qa, qe1 - qe);
}

double eta_f(const Distribution& f, double q) {
  require_level(q, "q");
  return f.cdf(2.0 / 3.0 * f.quantile(q) + 1.0 / 3.0 * f.quantile(1.0 - q));
}

double kappa_qf(const Distribution& f, const Distribution& g, double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw std::domain_error("kappa_qf needs 0 < alpha < 1/2");
  const double ga = g.quantile(alpha), ga1 = g.quantile(1.0 - alpha);
  const double inner_hi = g.quantile(eta_f(f, 1.0 - alpha));
  const double inner_lo = g.quantile(eta_f(f, alpha));
  return ratio(ga1 - 3.0 * inner_hi + 3.0 * inner_lo - ga, ga1 - ga);
}

}  // namespace kurtord
