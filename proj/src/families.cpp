#include "kurtord/families.hpp"

#include <cmath>
#include <stdexcept>

namespace kurtord {
namespace {

bool open_between(double x, double lo, double hi) { return x > lo && x < hi; }

// Exponentials of the w-form: A w^j = exp((tau + j) s - nu), B w^j = exp((j - tau) s + nu).
struct WForm {
  double tau, nu, s;
  double a(int j) const { return std::exp((tau + j) * s - nu); }
  double b(int j) const { return std::exp((j - tau) * s + nu); }
};

double h_with_scale(const SasReduced& red, double t, double* scale) {
  const double tau = red.tau_tilde;
  const WForm w{tau, red.nu_tilde, stable_asinh(t)};
  const double t1 = (tau - 1.0) * w.a(1), t2 = (tau + 1.0) * w.a(-1);
  const double t3 = (tau + 1.0) * w.b(1), t4 = (tau - 1.0) * w.b(-1);
  if (scale) *scale = 0.25 * (std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4));
  return 0.25 * (t1 + t2 - t3 - t4);
}

double r3_kernel(const SasReduced& red, double t, double* scale) {
  const double tau = red.tau_tilde;
  const WForm w{tau, red.nu_tilde, stable_asinh(t)};
  const double c1 = (tau - 1.0) * (tau - 2.0), c2 = (tau + 1.0) * (tau + 2.0), c0 = 2.0 * (tau * tau - 4.0);
  const double terms[6] = {c1 * w.a(2), c2 * w.a(-2), c0 * w.a(0), c2 * w.b(2), c1 * w.b(-2), c0 * w.b(0)};
  double sum = 0.0, mag = 0.0;
  for (double x : terms) {
    sum += x;
    mag += std::abs(x);
  }
  if (scale) *scale = mag / 8.0;
  return sum / 8.0;
}

double slope(const SasReduced& red, double sign) {
  const double a = std::abs(sas_r_derivs(red, sign * 1e3).r2);
  const double b = std::abs(sas_r_derivs(red, sign * 1e4).r2);
  if (a == 0.0 || b == 0.0) return -INFINITY;
  return std::log(b / a) / std::log(10.0);
}

LimitClass classify_slope(double s) {
  if (s < -0.05) return LimitClass::zero;
  if (s <= 0.05) return LimitClass::finite;
  if (s < 0.95) return LimitClass::sublinear;
  if (s <= 1.05) return LimitClass::linear;
  return LimitClass::superlinear;
}

}  // namespace

MonomialOrders monomial_order_predicate(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("monomial exponent must be positive");
  const bool fw = !open_between(p, 1.0, 2.0);
  const bool bw = !open_between(p, 0.5, 1.0);
  return {fw, bw, fw && bw};
}

WeibullOrders weibull_order_predicate(double k, double l) {
  if (!(k > 0.0) || !(l > 0.0)) throw std::invalid_argument("Weibull shapes must be positive");
  const MonomialOrders m = monomial_order_predicate(k / l);
  return {m.leq3_fw, m.equiv3};
}

SasReduced SasReduced::from_pair(double nu_f, double tau_f, double nu_g, double tau_g) {
  if (!(tau_f > 0.0) || !(tau_g > 0.0)) throw std::invalid_argument("sas tau must be positive");
  return {(nu_f - nu_g) / tau_g, tau_f / tau_g};
}

double stable_asinh(double t) noexcept {
  const double a = std::abs(t);
  // log(a + sqrt(1 + a^2)) = log1p(a + a^2 / (1 + sqrt(1 + a^2)))
  const double v = a < 1e150 ? std::log1p(a + a * a / (1.0 + std::hypot(1.0, a)))
                             : std::log(a) + std::log(2.0);
  return t < 0.0 ? -v : v;
}

SasDerivs sas_r_derivs(const SasReduced& red, double t) {
  const double tau = red.tau_tilde;
  const double arg = tau * stable_asinh(t) - red.nu_tilde;
  const double root = std::hypot(1.0, t);
  SasDerivs d{};
  d.r = std::sinh(arg);
  d.r1 = tau * std::cosh(arg) / root;
  d.r2 = tau * sas_h(red, t) / (root * root * root);
  d.r3 = tau * r3_kernel(red, t, nullptr) / std::pow(root, 5);
  return d;
}

double sas_h(const SasReduced& red, double t) { return h_with_scale(red, t, nullptr); }

double sas_h_prime(const SasReduced& red, double t) {
  const double tau = red.tau_tilde;
  return (tau * tau - 1.0) * std::cosh(tau * stable_asinh(t) - red.nu_tilde);
}

SasOrders sas_order_predicate(double nu_f, double tau_f, double nu_g, double tau_g) {
  if (!(tau_f > 0.0) || !(tau_g > 0.0)) throw std::invalid_argument("sas tau must be positive");
  if (nu_f == nu_g && tau_f == tau_g) throw std::invalid_argument("identical sinh-arsinh parameters");
  const bool wide = tau_f >= 2.0 * tau_g;
  return {wide, tau_f > tau_g, wide};
}

R2Profile sas_r2_profile(const SasReduced& red) {
  constexpr int kPoints = 2401;
  constexpr double kSpan = 12.0;
  constexpr double kTol = 1e-12;

  int first = 0, last = 0;
  bool up = false, down = false, flat = true;
  for (int i = 0; i < kPoints; ++i) {
    const double t = std::sinh(-kSpan + 2.0 * kSpan * i / (kPoints - 1));
    double hs = 0.0, js = 0.0;
    const double h = h_with_scale(red, t, &hs);
    const double j = r3_kernel(red, t, &js);
    const int sh = h > kTol * hs ? 1 : (h < -kTol * hs ? -1 : 0);
    if (sh != 0) {
      if (first == 0) first = sh;
      last = sh;
    }
    if (j > kTol * js) {
      up = true;
      flat = false;
    } else if (j < -kTol * js) {
      down = true;
      flat = false;
    }
  }

  R2Profile row{};
  row.sign_change = (first == -1 && last == 1)   ? SignChange::minus_to_plus
                    : (first == 1 && last == -1) ? SignChange::plus_to_minus
                                                 : SignChange::none;
  row.monotonicity = flat ? Monotonicity::constant
                     : (up && !down) ? Monotonicity::increasing
                     : (down && !up) ? Monotonicity::decreasing
                                     : Monotonicity::none;
  row.limit_minus = sas_r_derivs(red, -1e4).r2;
  row.limit_plus = sas_r_derivs(red, 1e4).r2;
  row.slope_minus = slope(red, -1.0);
  row.slope_plus = slope(red, 1.0);
  const LimitClass lm = classify_slope(row.slope_minus), lp = classify_slope(row.slope_plus);
  row.limit = lm == lp ? lm : LimitClass::mixed;

  const bool leq3 = row.monotonicity == Monotonicity::increasing || row.monotonicity == Monotonicity::constant;
  row.leq3 = leq3 ? Verdict3::yes : Verdict3::no;
  row.leq_gs = leq3 ? Verdict3::yes
               : row.sign_change == SignChange::minus_to_plus ? Verdict3::iff_t0_zero
                                                               : Verdict3::no;
  return row;
}

std::string to_string(SignChange v) {
  switch (v) {
    case SignChange::plus_to_minus: return "+ to -";
    case SignChange::none: return "none";
    case SignChange::minus_to_plus: return "- to +";
  }
  return "?";
}

std::string to_string(Monotonicity v) {
  switch (v) {
    case Monotonicity::increasing: return "increasing";
    case Monotonicity::decreasing: return "decreasing";
    case Monotonicity::constant: return "constant";
    case Monotonicity::none: return "no";
  }
  return "?";
}

std::string to_string(LimitClass v) {
  switch (v) {
    case LimitClass::zero: return "0";
    case LimitClass::finite: return "finite";
    case LimitClass::sublinear: return "sub-linear";
    case LimitClass::linear: return "linear";
    case LimitClass::superlinear: return "super-linear";
    case LimitClass::mixed: return "mixed";
  }
  return "?";
}

std::string to_string(Verdict3 v) {
  switch (v) {
    case Verdict3::yes: return "yes";
    case Verdict3::no: return "no";
    case Verdict3::iff_t0_zero: return "iff t0 = 0";
  }
  return "?";
}

}  // namespace kurtord
