#pragma once

#include "kurtord/distributions.hpp"
#include "kurtord/grid.hpp"
#include "kurtord/transport.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kurtord {

enum class Status { holds, fails, undecided };

const char* to_string(Status s) noexcept;

/// Where a sign test found its worst point.
struct Witness {
  std::string quantity;  // e.g. "R'''" or "R''-t0"
  TailLevel level;       // probability level (unset for k-convexity tuples)
  double p = 0.0;
  double t = 0.0;
  double value = 0.0;         // offending slack
  std::vector<double> nodes;  // divided-difference tuple, when relevant
};

/// Grid-certified verdict.
///
/// Holds: no slack below -tol * scale. Fails: some slack below
/// -band * tol * scale. Undecided otherwise, or when core grid points
/// could not be evaluated.
struct OrderVerdict {
  Status status = Status::undecided;
  std::optional<Witness> witness;
  double margin = 0.0;       // minimum slack, ties counted as 0
  std::size_t points = 0;    // evaluated levels
  std::size_t skipped = 0;   // tail levels outside representable range
  std::size_t failed = 0;    // core levels that could not be evaluated
};

struct CheckOptions {
  GridOptions grid;
  double tol = 1e-9;
  double undecided_band = 100.0;
  std::uint64_t seed = 0x5EED;
  std::size_t random_tuples = 10000;
};

/// Recursive divided difference [x0, ..., xk | phi]. Throws
/// std::invalid_argument on fewer than one node or repeated nodes.
double divided_difference(const std::function<double(double)>& phi, const std::vector<double>& nodes);

struct Interval {
  double lower;
  double upper;
};

/// Sign of k-th divided differences of phi over consecutive tuples of a
/// uniform `samples`-point grid on the open interval and over seeded random
/// tuples. k <= 3, samples >= k + 1, finite domain.
OrderVerdict kconvex_check(const std::function<double(double)>& phi, Interval domain, int k,
                           std::size_t samples, const CheckOptions& opts = {});

/// The transport map evaluated on the probability grid, shared by all tests
/// of one pair.
struct PairSamples {
  TransportMap map;
  std::vector<TransportPoint> points;
};

PairSamples evaluate_pair(const Distribution& f, const Distribution& g, const CheckOptions& opts = {});

/// F <=_k G for k in 0..3.
OrderVerdict leq_k(const PairSamples& s, int k, const CheckOptions& opts = {});
OrderVerdict leq_k(const Distribution& f, const Distribution& g, int k, const CheckOptions& opts = {});

/// R'' - t0 changes sign at most once, from below to above.
OrderVerdict leq_gs(const PairSamples& s, double t0, const CheckOptions& opts = {});
OrderVerdict leq_gs(const Distribution& f, const Distribution& g, double t0, const CheckOptions& opts = {});

/// R'' strictly negative, then at most two ties, then strictly positive.
OrderVerdict strict_gss(const PairSamples& s, const CheckOptions& opts = {});
OrderVerdict strict_gss(const Distribution& f, const Distribution& g, const CheckOptions& opts = {});

/// Both F <=_3 G and G <=_3 F, through 0 <= R''' <= 3 R''^2 / R'.
OrderVerdict equiv_3(const PairSamples& s, const CheckOptions& opts = {});
OrderVerdict equiv_3(const Distribution& f, const Distribution& g, const CheckOptions& opts = {});

struct ThresholdRange {
  double lower;
  double upper;
  bool empty;
};

/// Open range of R'' over the grid, shrunk by the tie tolerance.
ThresholdRange reasonable_thresholds(const PairSamples& s, const CheckOptions& opts = {});
ThresholdRange reasonable_thresholds(const Distribution& f, const Distribution& g, const CheckOptions& opts = {});

/// Admissible inflection values [p_lo, p_hi] of R''.
struct InflectionReport {
  double p_lo = 0.0;
  double p_hi = 1.0;
  bool degenerate_low = false;   // R'' >= 0 everywhere, p = 0
  bool degenerate_high = false;  // R'' <= 0 everywhere, p = 1
  bool single_crossing = false;  // otherwise the interval spans the mixed-sign region
  bool leq3_holds = false;       // precondition
};

InflectionReport inflection_values(const PairSamples& s, const CheckOptions& opts = {});
InflectionReport inflection_values(const Distribution& f, const Distribution& g, const CheckOptions& opts = {});

/// Locations where R^{(k)} - offset changes sign across the core grid,
/// refined by bracketing root search. k in 2..3.
std::vector<double> sign_changes(const PairSamples& s, int k, double offset = 0.0,
                                 const CheckOptions& opts = {});

struct OrderSelector {
  enum class Kind { leq, gs, gss, equiv3 };
  Kind kind = Kind::leq;
  int k = 3;
  double t0 = 0.0;

  static OrderSelector leq(int k) { return {Kind::leq, k, 0.0}; }
  static OrderSelector gs(double t0) { return {Kind::gs, 0, t0}; }
  static OrderSelector gss() { return {Kind::gss, 0, 0.0}; }
  static OrderSelector equiv() { return {Kind::equiv3, 0, 0.0}; }

  std::string describe() const;
};

OrderVerdict check(const PairSamples& s, const OrderSelector& sel, const CheckOptions& opts = {});
OrderVerdict check(const Distribution& f, const Distribution& g, const OrderSelector& sel,
                   const CheckOptions& opts = {});

struct TransitivityViolation {
  std::size_t a, b, c;  // a <= b and b <= c hold, a <= c fails
  Witness witness;      // from the failing pair
};

struct TransitivityReport {
  std::vector<std::vector<OrderVerdict>> verdicts;  // [i][j], diagonal left default
  std::vector<TransitivityViolation> violations;
  std::size_t undecided = 0;
};

/// Evaluates every ordered pair and lists certified violations.
/// Requires at least three distributions.
TransitivityReport transitivity_probe(const std::vector<Distribution>& fs, const OrderSelector& sel,
                                      const CheckOptions& opts = {});

}  // namespace kurtord
