#pragma once

#include <string>

namespace kurtord {

struct MonomialOrders {
  bool leq3_fw;  // F <=_3 G for R(t) = t^p
  bool leq3_bw;  // G <=_3 F
  bool equiv3;
};

MonomialOrders monomial_order_predicate(double p);

struct WeibullOrders {
  bool leq3;
  bool equiv3;
};

/// Weibull{k} against Weibull{l}: R(t) = t^{k/l}.
WeibullOrders weibull_order_predicate(double k, double l);

/// Parameters of R = G^{-1} o F for two sinh-arsinh laws:
/// R(t) = sinh(tau_tilde * asinh(t) - nu_tilde).
struct SasReduced {
  double nu_tilde;
  double tau_tilde;

  static SasReduced from_pair(double nu_f, double tau_f, double nu_g, double tau_g);
};

/// asinh(t) without cancellation for negative t.
double stable_asinh(double t) noexcept;

struct SasDerivs {
  double r;
  double r1;
  double r2;
  double r3;
};

SasDerivs sas_r_derivs(const SasReduced& red, double t);

/// Sign carrier of R'': R''(t) = tau_tilde (1 + t^2)^{-3/2} h(t).
double sas_h(const SasReduced& red, double t);
double sas_h_prime(const SasReduced& red, double t);

struct SasOrders {
  bool leq3;
  bool leq_gs0;
  bool leq_gs_t0_nonzero;
};

/// Throws std::invalid_argument for identical laws or non-positive tau.
SasOrders sas_order_predicate(double nu_f, double tau_f, double nu_g, double tau_g);

enum class SignChange { plus_to_minus, none, minus_to_plus };
enum class Monotonicity { increasing, decreasing, constant, none };
enum class LimitClass { zero, finite, sublinear, linear, superlinear, mixed };
enum class Verdict3 { yes, no, iff_t0_zero };

struct R2Profile {
  SignChange sign_change;
  Monotonicity monotonicity;
  LimitClass limit;
  double limit_minus;  // R'' at t = -1e4
  double limit_plus;   // R'' at t = 1e4
  double slope_minus;  // log-log slope of |R''| on [1e3, 1e4], left tail
  double slope_plus;
  Verdict3 leq3;
  Verdict3 leq_gs;
};

/// Numerical classification of R'' on a sinh-spaced grid.
R2Profile sas_r2_profile(const SasReduced& red);

std::string to_string(SignChange v);
std::string to_string(Monotonicity v);
std::string to_string(LimitClass v);
std::string to_string(Verdict3 v);

}  // namespace kurtord
