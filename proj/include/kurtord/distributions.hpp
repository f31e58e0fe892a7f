#pragma once

#include <string>
#include <variant>

namespace kurtord {

/// Open support interval (lower, upper); either end may be infinite.
struct Support {
  double lower;
  double upper;

  bool contains(double t) const noexcept { return t > lower && t < upper; }
};

enum class Tail { lower, upper };

/// A probability level carried by the log of its smaller tail mass.
///
/// For `Tail::lower` the level is p = exp(log_mass); for `Tail::upper` it is
/// p = 1 - exp(log_mass). Levels whose p is not representable in double
/// (p < 1e-308 or 1 - p < 1e-16) remain distinct and invertible.
struct TailLevel {
  Tail side = Tail::lower;
  double log_mass = 0.0;

  static TailLevel from_p(double p);
  double p() const noexcept;

  /// Orders levels by increasing p.
  friend bool operator<(const TailLevel& a, const TailLevel& b) noexcept;
};

// Family parameters. Scale and location of every family are fixed to the
// standard form; `Distribution` adds an optional affine map on top.
struct PowerUnit {  // F(t) = t^p on (0, 1)
  double p;
};
struct ReflectedCubeRoot {  // F(t) = 1 - ((c - t) / c)^{1/3} on (0, c)
  double c;
};
struct Weibull {  // F(t) = 1 - exp(-t^k) on (0, inf)
  double k;
};
struct SinhArsinh {  // sinh(tau * asinh(X) - nu) ~ N(0, 1)
  double nu;
  double tau;
};
struct StandardNormal {};

using FamilySpec = std::variant<PowerUnit, ReflectedCubeRoot, Weibull, SinhArsinh, StandardNormal>;

enum class QuantileKind { analytic, numeric_inversion };

/// Reference cdf B with F = B(Z(t)). Uniform: Z = F. Normal: Z is the
/// normal score transform of a sinh-arsinh or normal law.
enum class Base { uniform, normal };

/// Density information at one point, in log / ratio form.
struct LocalDensity {
  double log_pdf;
  double score;            // f'/f
  double score_scale;      // magnitude of the terms summed into `score`
  double curvature;        // f''/f
  double curvature_scale;  // magnitude of the terms summed into `curvature`
};

/// A continuous distribution with interval support, strictly positive
/// density on it and three continuous derivatives of the cdf.
///
/// Values are immutable; every member is a pure function of its argument.
class Distribution {
 public:
  /// Throws std::invalid_argument on non-positive shape, c or scale.
  explicit Distribution(FamilySpec family, double location = 0.0, double scale = 1.0,
                        QuantileKind kind = QuantileKind::analytic);

  const FamilySpec& family() const noexcept { return family_; }
  double location() const noexcept { return location_; }
  double scale() const noexcept { return scale_; }
  QuantileKind quantile_kind() const noexcept { return kind_; }

  Support support() const noexcept;

  double cdf(double t) const;
  double ccdf(double t) const;
  double pdf(double t) const;
  double pdf_d1(double t) const;
  double pdf_d2(double t) const;

  /// Tail mass of t. Throws std::domain_error outside the support.
  TailLevel tail_level(double t) const;

  /// Log-domain density data at an interior t. Throws std::domain_error outside.
  LocalDensity local(double t) const;

  /// Same data for Z' instead of f = B'(Z) Z'. Throws std::invalid_argument
  /// when `base` is neither uniform nor the natural base.
  LocalDensity local(double t, Base base) const;
  Base natural_base() const noexcept;
  double log_pdf(double t) const { return local(t).log_pdf; }

  double quantile(double p) const;
  double quantile(TailLevel level) const;

  /// Canonical spec string, e.g. `weibull(k=1.5)`.
  std::string describe() const;

 private:
  FamilySpec family_;
  double location_;
  double scale_;
  QuantileKind kind_;
};

Distribution make_distribution(const FamilySpec& spec);

/// Inverts the cdf by bracketing and safeguarded root refinement.
/// Guarantees |F(t) - p| <= 1e-12; throws std::runtime_error when no
/// bracket can be established.
double quantile_numeric(const Distribution& d, double p);

struct Mode {
  enum class Kind { interior, lower_boundary, upper_boundary, flat };
  double location;
  Kind kind;
};

/// Maximiser of the density. Boundary modes report the support endpoint.
Mode mode(const Distribution& d);

}  // namespace kurtord
