#include "kurtord/distributions.hpp"

#include "kurtord/normal.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace kurtord {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.69314718055994530942;

// log(1 - exp(x)) for x < 0.
double log1mexp(double x) noexcept {
  return x > -kLn2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

double log_cosh(double a) noexcept {
  const double m = std::abs(a);
  return m + std::log1p(std::exp(-2.0 * m)) - kLn2;
}

// Per-family evaluators in standard coordinates.

struct NormalEval {
  Support support() const { return {-kInf, kInf}; }

  TailLevel tail(double x) const {
    return x <= 0.0 ? TailLevel{Tail::lower, normal::log_cdf(x)}
                    : TailLevel{Tail::upper, normal::log_cdf(-x)};
  }

  double quantile(TailLevel l) const {
    const double z = normal::quantile_from_log(l.log_mass);
    return l.side == Tail::lower ? z : -z;
  }

  LocalDensity local(double x) const {
    return {normal::log_pdf(x), -x, std::abs(x), x * x - 1.0, x * x + 1.0};
  }

  LocalDensity reduced(double) const { return {0.0, 0.0, 0.0, 0.0, 0.0}; }
};

struct SasEval {
  double nu;
  double tau;

  Support support() const { return {-kInf, kInf}; }

  double to_normal(double x) const { return std::sinh(tau * std::asinh(x) - nu); }

  TailLevel tail(double x) const {
    const double z = to_normal(x);
    return NormalEval{}.tail(z);
  }

  double quantile(TailLevel l) const {
    const double z = NormalEval{}.quantile(l);
    return std::sinh((std::asinh(z) + nu) / tau);
  }

  LocalDensity local(double x) const { return eval(x, true); }
  LocalDensity reduced(double x) const { return eval(x, false); }

  // With `full`, data of f = phi(Z) Z'; otherwise of Z' = tau cosh(a) / sqrt(1 + x^2).
  LocalDensity eval(double x, bool full) const {
    const double a = tau * std::asinh(x) - nu;
    const double s = std::sinh(a);
    const double c = std::cosh(a);
    const double th = std::tanh(a);
    const double root = std::hypot(1.0, x);
    const double u = 1.0 / root;
    const double u2 = u * u;

    LocalDensity out{};
    out.log_pdf = std::log(tau) + log_cosh(a) - std::log(root);

    const double t1 = tau * u * th;
    const double t3 = -x * u2;
    // d/dx of t1 + t3, term by term.
    const double d3 = -tau * x * u2 * u * th;
    const double d4 = tau * tau * u2 / (c * c);
    const double d5 = -u2 + 2.0 * x * x * u2 * u2;
    double score = t1 + t3;
    double score_scale = std::abs(t1) + std::abs(t3);
    double dscore = d3 + d4 + d5;
    double dscore_scale = std::abs(d3) + std::abs(d4) + u2 + 2.0 * x * x * u2 * u2;
    if (full) {
      // log phi(Z) contributes -Z Z' to the score.
      out.log_pdf += normal::log_pdf(s);
      const double t2 = -tau * u * s * c;
      const double d1 = tau * x * u2 * u * s * c;
      const double d2 = -tau * tau * u2 * (c * c + s * s);
      score += t2;
      score_scale += std::abs(t2);
      dscore += d1 + d2;
      dscore_scale += std::abs(d1) + std::abs(d2);
    }
    out.score = score;
    out.score_scale = score_scale;
    out.curvature = dscore + score * score;
    out.curvature_scale = dscore_scale + score_scale * score_scale;
    return out;
  }
};

struct WeibullEval {
  double k;

  Support support() const { return {0.0, kInf}; }

  TailLevel tail(double y) const {
    const double u = std::exp(k * std::log(y));
    if (u < kLn2) return {Tail::lower, log1mexp(-u)};
    return {Tail::upper, -u};
  }

  double quantile(TailLevel l) const {
    double log_u;
    if (l.side == Tail::upper) {
      log_u = std::log(-l.log_mass);
    } else if (l.log_mass < -30.0) {
      // -log1p(-p) = p (1 + p/2 + ...)
      log_u = l.log_mass + 0.5 * std::exp(l.log_mass);
    } else {
      log_u = std::log(-std::log1p(-std::exp(l.log_mass)));
    }
    return std::exp(log_u / k);
  }

  LocalDensity local(double y) const {
    const double ly = std::log(y);
    const double u = std::exp(k * ly);
    LocalDensity out{};
    out.log_pdf = std::log(k) + (k - 1.0) * ly - u;
    out.score = ((k - 1.0) - k * u) / y;
    out.score_scale = (std::abs(k - 1.0) + k * u) / y;
    // f''/f = ((k-1)(k-2) - 3k(k-1)u + k^2 u^2) / y^2
    const double c0 = (k - 1.0) * (k - 2.0), c1 = 3.0 * k * (k - 1.0) * u, c2 = k * k * u * u;
    out.curvature = ((c0 - c1 + c2) / y) / y;
    out.curvature_scale = ((std::abs(c0) + std::abs(c1) + c2) / y) / y;
    return out;
  }
};

struct PowerEval {
  double a;

  Support support() const { return {0.0, 1.0}; }

  TailLevel tail(double y) const {
    const double la = a * std::log(y);
    if (la <= -kLn2) return {Tail::lower, la};
    return {Tail::upper, log1mexp(la)};
  }

  double quantile(TailLevel l) const {
    if (l.side == Tail::lower) return std::exp(l.log_mass / a);
    return std::exp(std::log1p(-std::exp(l.log_mass)) / a);
  }

  LocalDensity local(double y) const {
    LocalDensity out{};
    out.log_pdf = std::log(a) + (a - 1.0) * std::log(y);
    out.score = (a - 1.0) / y;
    out.score_scale = std::abs(out.score);
    out.curvature = ((a - 1.0) / y) * ((a - 2.0) / y);
    out.curvature_scale = std::abs(out.curvature);
    return out;
  }
};

struct RefCubeEval {
  double c;

  Support support() const { return {0.0, c}; }

  double log_s(double y) const {
    return y < 0.5 * c ? std::log1p(-y / c) : std::log((c - y) / c);
  }

  TailLevel tail(double y) const {
    const double log_survival = log_s(y) / 3.0;
    if (log_survival >= -kLn2) return {Tail::lower, log1mexp(log_survival)};
    return {Tail::upper, log_survival};
  }

  double quantile(TailLevel l) const {
    if (l.side == Tail::lower) {
      if (l.log_mass < -700.0) return 3.0 * c * std::exp(l.log_mass);
      return -c * std::expm1(3.0 * std::log1p(-std::exp(l.log_mass)));
    }
    return -c * std::expm1(3.0 * l.log_mass);
  }

  LocalDensity local(double y) const {
    const double gap = c - y;
    LocalDensity out{};
    out.log_pdf = -std::log(3.0 * c) - 2.0 / 3.0 * log_s(y);
    out.score = 2.0 / (3.0 * gap);
    out.score_scale = out.score;
    out.curvature = (10.0 / 9.0) / (gap * gap);
    out.curvature_scale = out.curvature;
    return out;
  }
};

template <typename Fn>
decltype(auto) with_eval(const FamilySpec& spec, Fn&& fn) {
  return std::visit(
      [&](const auto& fam) -> decltype(auto) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, PowerUnit>) return fn(PowerEval{fam.p});
        else if constexpr (std::is_same_v<T, ReflectedCubeRoot>) return fn(RefCubeEval{fam.c});
        else if constexpr (std::is_same_v<T, Weibull>) return fn(WeibullEval{fam.k});
        else if constexpr (std::is_same_v<T, SinhArsinh>) return fn(SasEval{fam.nu, fam.tau});
        else return fn(NormalEval{});
      },
      spec);
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(what) + " must be a positive finite number");
}

void validate(const FamilySpec& spec) {
  std::visit(
      [](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, PowerUnit>) require_positive(fam.p, "power exponent p");
        else if constexpr (std::is_same_v<T, ReflectedCubeRoot>) require_positive(fam.c, "refcube c");
        else if constexpr (std::is_same_v<T, Weibull>) require_positive(fam.k, "weibull k");
        else if constexpr (std::is_same_v<T, SinhArsinh>) {
          require_positive(fam.tau, "sas tau");
          if (!std::isfinite(fam.nu)) throw std::invalid_argument("sas nu must be finite");
        }
      },
      spec);
}

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

TailLevel TailLevel::from_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("probability level must lie in (0, 1)");
  if (p <= 0.5) return {Tail::lower, std::log(p)};
  return {Tail::upper, std::log1p(-p)};
}

double TailLevel::p() const noexcept {
  return side == Tail::lower ? std::exp(log_mass) : -std::expm1(log_mass);
}

bool operator<(const TailLevel& a, const TailLevel& b) noexcept {
  if (a.side == b.side)
    return a.side == Tail::lower ? a.log_mass < b.log_mass : a.log_mass > b.log_mass;
  return a.p() < b.p() || (a.p() == b.p() && a.side == Tail::lower);
}

Distribution::Distribution(FamilySpec family, double location, double scale, QuantileKind kind)
    : family_(family), location_(location), scale_(scale), kind_(kind) {
  validate(family_);
  require_positive(scale, "scale");
  if (!std::isfinite(location)) throw std::invalid_argument("location must be finite");
}

Support Distribution::support() const noexcept {
  const Support s = with_eval(family_, [](const auto& e) { return e.support(); });
  return {location_ + scale_ * s.lower, location_ + scale_ * s.upper};
}

TailLevel Distribution::tail_level(double t) const {
  if (!support().contains(t)) throw std::domain_error("point outside the support");
  const double y = (t - location_) / scale_;
  return with_eval(family_, [y](const auto& e) { return e.tail(y); });
}

Base Distribution::natural_base() const noexcept {
  return std::holds_alternative<SinhArsinh>(family_) || std::holds_alternative<StandardNormal>(family_)
             ? Base::normal
             : Base::uniform;
}

LocalDensity Distribution::local(double t) const { return local(t, Base::uniform); }

LocalDensity Distribution::local(double t, Base base) const {
  if (!support().contains(t)) throw std::domain_error("point outside the support");
  if (base != Base::uniform && base != natural_base()) throw std::invalid_argument("base not available for this family");
  const double y = (t - location_) / scale_;
  LocalDensity d = with_eval(family_, [y, base](const auto& e) -> LocalDensity {
    if constexpr (requires { e.reduced(y); }) {
      if (base == Base::normal) return e.reduced(y);
    }
    return e.local(y);
  });
  d.log_pdf -= std::log(scale_);
  d.score /= scale_;
  d.score_scale /= scale_;
  d.curvature /= scale_ * scale_;
  d.curvature_scale /= scale_ * scale_;
  return d;
}

double Distribution::cdf(double t) const {
  const Support s = support();
  if (t <= s.lower) return 0.0;
  if (t >= s.upper) return 1.0;
  return tail_level(t).p();
}

double Distribution::ccdf(double t) const {
  const Support s = support();
  if (t <= s.lower) return 1.0;
  if (t >= s.upper) return 0.0;
  const TailLevel l = tail_level(t);
  return l.side == Tail::upper ? std::exp(l.log_mass) : -std::expm1(l.log_mass);
}

double Distribution::pdf(double t) const {
  if (!support().contains(t)) return 0.0;
  return std::exp(local(t).log_pdf);
}

double Distribution::pdf_d1(double t) const {
  if (!support().contains(t)) return 0.0;
  const LocalDensity d = local(t);
  return std::exp(d.log_pdf) * d.score;
}

double Distribution::pdf_d2(double t) const {
  if (!support().contains(t)) return 0.0;
  const LocalDensity d = local(t);
  return std::exp(d.log_pdf) * d.curvature;
}

double Distribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile: p must lie in (0, 1)");
  if (kind_ == QuantileKind::numeric_inversion) return quantile_numeric(*this, p);
  return quantile(TailLevel::from_p(p));
}

double Distribution::quantile(TailLevel level) const {
  if (kind_ == QuantileKind::numeric_inversion) {
    const double p = level.p();
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile: level not representable for numeric inversion");
    return quantile_numeric(*this, p);
  }
  const double y = with_eval(family_, [level](const auto& e) { return e.quantile(level); });
  return location_ + scale_ * y;
}

std::string Distribution::describe() const {
  std::string out = std::visit(
      [](const auto& fam) -> std::string {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, PowerUnit>) return "power(p=" + fmt_num(fam.p);
        else if constexpr (std::is_same_v<T, ReflectedCubeRoot>) return "refcube(c=" + fmt_num(fam.c);
        else if constexpr (std::is_same_v<T, Weibull>) return "weibull(k=" + fmt_num(fam.k);
        else if constexpr (std::is_same_v<T, SinhArsinh>)
          return "sas(nu=" + fmt_num(fam.nu) + ",tau=" + fmt_num(fam.tau);
        else return "normal(";
      },
      family_);
  bool bare = std::holds_alternative<StandardNormal>(family_);
  if (location_ != 0.0) {
    out += (bare ? "loc=" : ",loc=") + fmt_num(location_);
    bare = false;
  }
  if (scale_ != 1.0) out += (bare ? "scale=" : ",scale=") + fmt_num(scale_);
  return out + ")";
}

Distribution make_distribution(const FamilySpec& spec) { return Distribution(spec); }

double quantile_numeric(const Distribution& d, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile: p must lie in (0, 1)");
  const Support s = d.support();
  const bool upper = p > 0.5;
  const double target = upper ? 1.0 - p : p;
  // Increasing in t on both branches.
  auto resid = [&](double t) { return upper ? target - d.ccdf(t) : d.cdf(t) - target; };

  double x0;
  if (std::isfinite(s.lower) && std::isfinite(s.upper)) x0 = 0.5 * (s.lower + s.upper);
  else if (std::isfinite(s.lower)) x0 = s.lower + d.scale();
  else if (std::isfinite(s.upper)) x0 = s.upper - d.scale();
  else x0 = d.location();

  constexpr int kMaxExpand = 2200;
  double lo = x0, hi = x0, step = d.scale();
  int n = 0;
  while (resid(lo) > 0.0) {
    if (++n > kMaxExpand) throw std::runtime_error("quantile: bracket failure below");
    lo = std::isfinite(s.lower) ? s.lower + 0.5 * (lo - s.lower) : lo - step;
    step *= 2.0;
  }
  step = d.scale();
  n = 0;
  while (resid(hi) < 0.0) {
    if (++n > kMaxExpand) throw std::runtime_error("quantile: bracket failure above");
    hi = std::isfinite(s.upper) ? s.upper - 0.5 * (s.upper - hi) : hi + step;
    step *= 2.0;
  }

  double t;
  if (resid(lo) == 0.0) {
    t = lo;
  } else if (resid(hi) == 0.0) {
    t = hi;
  } else {
    std::uintmax_t iters = 300;
    const auto bracket = boost::math::tools::toms748_solve(
        resid, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
    t = 0.5 * (bracket.first + bracket.second);
  }
  for (int i = 0; i < 4; ++i) {
    const double r = resid(t);
    const double dens = d.pdf(t);
    if (r == 0.0 || !(dens > 0.0)) break;
    const double cand = t - r / dens;
    if (!s.contains(cand) || std::abs(resid(cand)) >= std::abs(r)) break;
    t = cand;
  }
  // Near a finite edge the root is only resolvable to a few ulps; accept a sign change there.
  const auto ulps = [&](double x, int k, double to) {
    for (int i = 0; i < k; ++i) x = std::nextafter(x, to);
    return x;
  };
  const bool bracketed = resid(ulps(t, 4, -HUGE_VAL)) <= 0.0 && resid(ulps(t, 4, HUGE_VAL)) >= 0.0;
  if (!(std::abs(d.cdf(t) - p) <= 1e-12 || bracketed))
    throw std::runtime_error("quantile: inversion did not converge");
  return t;
}

Mode mode(const Distribution& d) {
  const auto place = [&](double y, Mode::Kind kind) {
    return Mode{d.location() + d.scale() * y, kind};
  };
  return std::visit(
      [&](const auto& fam) -> Mode {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, StandardNormal>) {
          return place(0.0, Mode::Kind::interior);
        } else if constexpr (std::is_same_v<T, Weibull>) {
          if (fam.k > 1.0) return place(std::pow((fam.k - 1.0) / fam.k, 1.0 / fam.k), Mode::Kind::interior);
          return place(0.0, Mode::Kind::lower_boundary);
        } else if constexpr (std::is_same_v<T, PowerUnit>) {
          if (fam.p > 1.0) return place(1.0, Mode::Kind::upper_boundary);
          if (fam.p < 1.0) return place(0.0, Mode::Kind::lower_boundary);
          return place(0.5, Mode::Kind::flat);
        } else if constexpr (std::is_same_v<T, ReflectedCubeRoot>) {
          return place(fam.c, Mode::Kind::upper_boundary);
        } else {
          if (fam.nu == 0.0) return place(0.0, Mode::Kind::interior);
          // Scan the central quantile range for the largest density, then
          // refine the stationary point of log f inside the neighbouring cells.
          const SasEval e{fam.nu, fam.tau};
          constexpr int kScan = 801;
          std::vector<double> xs(kScan);
          int best = 0;
          double best_lp = -kInf;
          for (int i = 0; i < kScan; ++i) {
            const double p = 1e-4 + (1.0 - 2e-4) * i / (kScan - 1);
            xs[i] = e.quantile(TailLevel::from_p(p));
            const double lp = e.local(xs[i]).log_pdf;
            if (lp > best_lp) {
              best_lp = lp;
              best = i;
            }
          }
          if (best == 0 || best == kScan - 1) return place(xs[best], Mode::Kind::interior);
          const auto score = [&](double x) { return e.local(x).score; };
          double lo = xs[best - 1], hi = xs[best + 1];
          if (score(lo) * score(hi) > 0.0) return place(xs[best], Mode::Kind::interior);
          std::uintmax_t iters = 200;
          const auto r = boost::math::tools::toms748_solve(
              score, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
          return place(0.5 * (r.first + r.second), Mode::Kind::interior);
        }
      },
      d.family());
}

}  // namespace kurtord
