#include "kurtord/orders.hpp"

#include "kurtord/parallel.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

namespace kurtord {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Slack {
  double value;
  double scale;
};

struct Component {
  const char* name;
  Slack (*eval)(const RDerivs&, double);
};

Witness point_witness(const char* name, const TransportPoint& pt, double value) {
  Witness w;
  w.quantity = name;
  w.level = pt.level;
  w.p = pt.level.p();
  w.t = pt.d.t;
  w.value = value;
  return w;
}

// Non-negativity of every component at every evaluated point.
OrderVerdict nonneg_verdict(const PairSamples& s, const std::vector<Component>& comps, double arg,
                            const CheckOptions& opts) {
  OrderVerdict v;
  double margin = kInf;
  double worst_norm = 0.0;
  bool any_fail = false;
  bool any_marginal = false;

  for (const TransportPoint& pt : s.points) {
    if (!pt.ok) {
      (pt.core && pt.failed ? v.failed : v.skipped) += 1;
      continue;
    }
    std::vector<Slack> vals;
    bool finite = true;
    for (const Component& c : comps) {
      vals.push_back(c.eval(pt.d, arg));
      finite = finite && std::isfinite(vals.back().value) && std::isfinite(vals.back().scale);
    }
    if (!finite) {
      (pt.core ? v.failed : v.skipped) += 1;
      continue;
    }
    ++v.points;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const auto [x, sc] = vals[c];
      const double tie = opts.tol * sc;
      margin = std::min(margin, std::abs(x) <= tie ? 0.0 : x);
      if (x >= -tie) continue;
      if (x < -opts.undecided_band * tie) any_fail = true;
      else any_marginal = true;
      const double norm = sc > 0.0 ? x / sc : -kInf;
      if (!v.witness || norm < worst_norm) {
        worst_norm = norm;
        v.witness = point_witness(comps[c].name, pt, x);
      }
    }
  }
  v.margin = v.points ? margin : 0.0;
  if (any_fail) v.status = Status::fails;
  else if (any_marginal || v.failed > 0 || v.points == 0) v.status = Status::undecided;
  else v.status = Status::holds;
  return v;
}

struct Signed {
  std::size_t idx;  // into PairSamples::points
  double value;
  double scale;
};

std::vector<Signed> r2_offsets(const PairSamples& s, double t0, std::size_t& failed, std::size_t& skipped) {
  std::vector<Signed> out;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const TransportPoint& pt = s.points[i];
    const double x = pt.ok ? pt.d.r2 - t0 : NAN;
    if (!std::isfinite(x)) {
      (pt.core && (pt.failed || pt.ok) ? failed : skipped) += 1;
      continue;
    }
    out.push_back({i, x, pt.d.scale2 + std::abs(t0)});
  }
  return out;
}

struct Crossing {
  std::size_t last_neg = kNone;   // position in the Signed list
  std::size_t first_pos = kNone;
  bool single() const { return last_neg == kNone || first_pos == kNone || last_neg < first_pos; }
};

Crossing find_crossing(const std::vector<Signed>& xs, double tol) {
  Crossing c;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double tie = tol * xs[j].scale;
    if (xs[j].value < -tie) c.last_neg = j;
    if (xs[j].value > tie && c.first_pos == kNone) c.first_pos = j;
  }
  return c;
}

// Largest over split positions of min(-values left, values right).
double split_margin(const std::vector<Signed>& xs, double tol) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  std::vector<double> m(n);
  for (std::size_t j = 0; j < n; ++j) m[j] = std::abs(xs[j].value) <= tol * xs[j].scale ? 0.0 : xs[j].value;
  std::vector<double> suffix(n + 1, kInf);
  for (std::size_t j = n; j-- > 0;) suffix[j] = std::min(suffix[j + 1], m[j]);
  double best = -kInf;
  double left = kInf;
  for (std::size_t j = 0; j <= n; ++j) {
    best = std::max(best, std::min(left, suffix[j]));
    if (j < n) left = std::min(left, -m[j]);
  }
  return best;
}

Witness crossing_witness(const PairSamples& s, const std::vector<Signed>& xs, const Crossing& c, const char* name) {
  const Signed& neg = xs[c.last_neg];
  Witness w = point_witness(name, s.points[neg.idx], neg.value);
  w.nodes = {s.points[xs[c.first_pos].idx].d.t, s.points[neg.idx].d.t};
  return w;
}

Slack slack_r0(const RDerivs& d, double) { return {d.r - d.t, std::abs(d.r) + std::abs(d.t)}; }
Slack slack_r1(const RDerivs& d, double) { return {d.r1 - 1.0, d.r1 + 1.0}; }
Slack slack_r2(const RDerivs& d, double) { return {d.r2, d.scale2}; }
Slack slack_r3(const RDerivs& d, double) { return {d.r3, d.scale3}; }
Slack slack_upper3(const RDerivs& d, double) {
  // Divide before squaring so deep tails do not underflow.
  const double bound = 3.0 * (d.r2 / d.r1) * d.r2;
  const double spread = std::abs(d.r2) + d.scale2;
  const double bound_scale = 3.0 * (spread / d.r1) * spread;
  return {bound - d.r3, d.scale3 + bound_scale};
}

double lagrange_scale(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double prod = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != i) prod *= std::abs(x[i] - x[j]);
    s += std::abs(y[i]) / prod;
  }
  return s;
}

double dd_table(std::vector<double> v, const std::vector<double>& x) {
  const std::size_t n = x.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i + j < n; ++i) v[i] = (v[i + 1] - v[i]) / (x[i + j] - x[i]);
  return v[0];
}

}  // namespace

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::holds: return "Holds";
    case Status::fails: return "Fails";
    case Status::undecided: return "Undecided";
  }
  return "?";
}

double divided_difference(const std::function<double(double)>& phi, const std::vector<double>& nodes) {
  if (nodes.empty()) throw std::invalid_argument("divided difference needs at least one node");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i] == nodes[j]) throw std::invalid_argument("divided difference with repeated nodes");
  std::vector<double> v(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = phi(nodes[i]);
  return dd_table(std::move(v), nodes);
}

OrderVerdict kconvex_check(const std::function<double(double)>& phi, Interval domain, int k,
                           std::size_t samples, const CheckOptions& opts) {
  if (k < 0 || k > 3) throw std::invalid_argument("k-convexity supported for k in 0..3");
  if (samples < static_cast<std::size_t>(k) + 1) throw std::invalid_argument("too few samples for k");
  if (!std::isfinite(domain.lower) || !std::isfinite(domain.upper) || !(domain.lower < domain.upper))
    throw std::invalid_argument("k-convexity needs a finite non-empty interval");

  std::vector<double> xs(samples), ys(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    xs[i] = domain.lower + (domain.upper - domain.lower) * (static_cast<double>(i) + 0.5) / static_cast<double>(samples);
    ys[i] = phi(xs[i]);
  }

  OrderVerdict v;
  double margin = kInf;
  bool any_fail = false, any_marginal = false;
  struct Worst {
    double norm = 0.0;
    std::optional<Witness> w;
  } local, wide;

  auto visit = [&](const std::vector<std::size_t>& idx, Worst& worst) {
    std::vector<double> x, y;
    for (std::size_t i : idx) {
      x.push_back(xs[i]);
      y.push_back(ys[i]);
    }
    const double d = dd_table(y, x);
    const double sc = lagrange_scale(x, y);
    if (!std::isfinite(d) || !std::isfinite(sc)) {
      ++v.failed;
      return;
    }
    ++v.points;
    const double tie = opts.tol * sc;
    margin = std::min(margin, std::abs(d) <= tie ? 0.0 : d);
    if (d >= -tie) return;
    if (d < -opts.undecided_band * tie) any_fail = true;
    else any_marginal = true;
    const double norm = d / sc;
    if (!worst.w || norm < worst.norm) {
      worst.norm = norm;
      Witness w;
      w.quantity = "divided difference";
      w.t = x.front();
      w.value = d;
      w.nodes = x;
      worst.w = w;
    }
  };

  const std::size_t width = static_cast<std::size_t>(k) + 1;
  std::vector<std::size_t> idx(width);
  for (std::size_t i = 0; i + width <= samples; ++i) {
    for (std::size_t j = 0; j < width; ++j) idx[j] = i + j;
    visit(idx, local);
  }
  if (samples > width) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, samples - 1);
    for (std::size_t r = 0; r < opts.random_tuples; ++r) {
      idx.clear();
      while (idx.size() < width) {
        const std::size_t c = pick(rng);
        if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
      }
      std::sort(idx.begin(), idx.end());
      visit(idx, wide);
    }
  }

  v.witness = local.w ? local.w : wide.w;
  v.margin = v.points ? margin : 0.0;
  if (any_fail) v.status = Status::fails;
  else if (any_marginal || v.failed > 0 || v.points == 0) v.status = Status::undecided;
  else v.status = Status::holds;
  return v;
}

PairSamples evaluate_pair(const Distribution& f, const Distribution& g, const CheckOptions& opts) {
  PairSamples s{TransportMap{f, g}, {}};
  s.points = sample(s.map, probability_levels(opts.grid));
  return s;
}

OrderVerdict leq_k(const PairSamples& s, int k, const CheckOptions& opts) {
  switch (k) {
    case 0: return nonneg_verdict(s, {{"R-t", slack_r0}}, 0.0, opts);
    case 1: return nonneg_verdict(s, {{"R'-1", slack_r1}}, 0.0, opts);
    case 2: return nonneg_verdict(s, {{"R''", slack_r2}}, 0.0, opts);
    case 3: return nonneg_verdict(s, {{"R'''", slack_r3}}, 0.0, opts);
    default: throw std::invalid_argument("order k must lie in 0..3");
  }
}

OrderVerdict leq_k(const Distribution& f, const Distribution& g, int k, const CheckOptions& opts) {
  if (k < 0 || k > 3) throw std::invalid_argument("order k must lie in 0..3");
  return leq_k(evaluate_pair(f, g, opts), k, opts);
}

OrderVerdict leq_gs(const PairSamples& s, double t0, const CheckOptions& opts) {
  OrderVerdict v;
  const std::vector<Signed> xs = r2_offsets(s, t0, v.failed, v.skipped);
  v.points = xs.size();
  v.margin = split_margin(xs, opts.tol);

  const Crossing strict = find_crossing(xs, opts.tol);
  const Crossing loose = find_crossing(xs, opts.undecided_band * opts.tol);
  if (!loose.single()) {
    v.status = Status::fails;
    v.witness = crossing_witness(s, xs, loose, "R''-t0");
  } else if (!strict.single()) {
    v.status = Status::undecided;
    v.witness = crossing_witness(s, xs, strict, "R''-t0");
  } else {
    v.status = (v.failed > 0 || v.points == 0) ? Status::undecided : Status::holds;
  }
  return v;
}

OrderVerdict leq_gs(const Distribution& f, const Distribution& g, double t0, const CheckOptions& opts) {
  return leq_gs(evaluate_pair(f, g, opts), t0, opts);
}

OrderVerdict strict_gss(const PairSamples& s, const CheckOptions& opts) {
  OrderVerdict v;
  const std::vector<Signed> xs = r2_offsets(s, 0.0, v.failed, v.skipped);
  v.points = xs.size();
  v.margin = split_margin(xs, opts.tol);

  // Phases: 0 negative run, 1 ties at the crossing, 2 positive run.
  int phase = 0;
  int ties = 0;
  bool strict_seen = false;
  std::optional<std::size_t> bad;
  for (std::size_t j = 0; j < xs.size() && !bad; ++j) {
    const TransportPoint& pt = s.points[xs[j].idx];
    const double tie = opts.tol * xs[j].scale;
    const double x = xs[j].value;
    if (x < -tie) {
      strict_seen = true;
      if (phase != 0) bad = j;
    } else if (x > tie) {
      strict_seen = true;
      phase = 2;
    } else if (pt.core) {
      // Unresolved tail points carry no sign information; core ties must
      // sit at the crossing.
      if (phase == 2 || ++ties > 2) bad = j;
      else phase = 1;
    }
  }
  if (!bad && !strict_seen && !xs.empty()) bad = 0;

  if (bad) {
    v.status = Status::fails;
    v.witness = point_witness("R''", s.points[xs[*bad].idx], xs[*bad].value);
  } else {
    v.status = (v.failed > 0 || v.points == 0) ? Status::undecided : Status::holds;
  }
  return v;
}

OrderVerdict strict_gss(const Distribution& f, const Distribution& g, const CheckOptions& opts) {
  return strict_gss(evaluate_pair(f, g, opts), opts);
}

OrderVerdict equiv_3(const PairSamples& s, const CheckOptions& opts) {
  return nonneg_verdict(s, {{"R'''", slack_r3}, {"3R''^2/R'-R'''", slack_upper3}}, 0.0, opts);
}

OrderVerdict equiv_3(const Distribution& f, const Distribution& g, const CheckOptions& opts) {
  return equiv_3(evaluate_pair(f, g, opts), opts);
}

ThresholdRange reasonable_thresholds(const PairSamples& s, const CheckOptions& opts) {
  double lo = kInf, hi = -kInf, lo_scale = 0.0, hi_scale = 0.0;
  for (const TransportPoint& pt : s.points) {
    if (!pt.ok) continue;
    if (pt.d.r2 < lo) {
      lo = pt.d.r2;
      lo_scale = pt.d.scale2;
    }
    if (pt.d.r2 > hi) {
      hi = pt.d.r2;
      hi_scale = pt.d.scale2;
    }
  }
  if (lo > hi) return {0.0, 0.0, true};
  const double a = lo + opts.tol * lo_scale;
  const double b = hi - opts.tol * hi_scale;
  if (!(a < b)) return {lo, hi, true};
  return {a, b, false};
}

ThresholdRange reasonable_thresholds(const Distribution& f, const Distribution& g, const CheckOptions& opts) {
  return reasonable_thresholds(evaluate_pair(f, g, opts), opts);
}

InflectionReport inflection_values(const PairSamples& s, const CheckOptions& opts) {
  InflectionReport rep;
  std::size_t failed = 0, skipped = 0;
  const std::vector<Signed> xs = r2_offsets(s, 0.0, failed, skipped);
  const Crossing c = find_crossing(xs, opts.tol);
  const auto p_at = [&](std::size_t j) { return s.points[xs[j].idx].level.p(); };

  rep.leq3_holds = leq_k(s, 3, opts).status == Status::holds;
  rep.single_crossing = c.single();
  rep.degenerate_low = c.last_neg == kNone;
  rep.degenerate_high = c.first_pos == kNone;
  if (rep.single_crossing) {
    rep.p_lo = rep.degenerate_low ? 0.0 : p_at(c.last_neg);
    rep.p_hi = rep.degenerate_high ? 1.0 : p_at(c.first_pos);
  } else {
    rep.p_lo = p_at(c.first_pos);
    rep.p_hi = p_at(c.last_neg);
  }
  return rep;
}

InflectionReport inflection_values(const Distribution& f, const Distribution& g, const CheckOptions& opts) {
  return inflection_values(evaluate_pair(f, g, opts), opts);
}

std::vector<double> sign_changes(const PairSamples& s, int k, double offset, const CheckOptions& opts) {
  if (k != 2 && k != 3) throw std::invalid_argument("sign changes are located for k = 2 or 3");
  const auto value = [k](const RDerivs& d) { return k == 2 ? d.r2 : d.r3; };
  const auto scale = [k](const RDerivs& d) { return k == 2 ? d.scale2 : d.scale3; };
  const auto fn = [&](double t) { return value(r_derivs(s.map, t)) - offset; };

  std::vector<double> roots;
  int prev_sign = 0;
  double prev_t = 0.0;
  for (const TransportPoint& pt : s.points) {
    if (!pt.ok) continue;
    const double x = value(pt.d) - offset;
    const double tie = opts.tol * (scale(pt.d) + std::abs(offset));
    const int sign = x > tie ? 1 : (x < -tie ? -1 : 0);
    if (sign == 0) continue;
    if (prev_sign != 0 && sign != prev_sign) {
      double a = prev_t, b = pt.d.t;
      double root = 0.5 * (a + b);
      try {
        const double fa = fn(a), fb = fn(b);
        if (fa == 0.0) root = a;
        else if (fb == 0.0) root = b;
        else if ((fa < 0.0) != (fb < 0.0)) {
          std::uintmax_t iters = 200;
          const auto br = boost::math::tools::toms748_solve(fn, a, b, fa, fb,
                                                            boost::math::tools::eps_tolerance<double>(50), iters);
          root = 0.5 * (br.first + br.second);
        }
      } catch (const std::exception&) {
      }
      roots.push_back(root);
    }
    prev_sign = sign;
    prev_t = pt.d.t;
  }
  return roots;
}

std::string OrderSelector::describe() const {
  char buf[64];
  switch (kind) {
    case Kind::leq: std::snprintf(buf, sizeof buf, "k%d", k); break;
    case Kind::gs: std::snprintf(buf, sizeof buf, "gs(t0=%.12g)", t0); break;
    case Kind::gss: std::snprintf(buf, sizeof buf, "gss"); break;
    case Kind::equiv3: std::snprintf(buf, sizeof buf, "equiv3"); break;
  }
  return buf;
}

OrderVerdict check(const PairSamples& s, const OrderSelector& sel, const CheckOptions& opts) {
  switch (sel.kind) {
    case OrderSelector::Kind::leq: return leq_k(s, sel.k, opts);
    case OrderSelector::Kind::gs: return leq_gs(s, sel.t0, opts);
    case OrderSelector::Kind::gss: return strict_gss(s, opts);
    case OrderSelector::Kind::equiv3: return equiv_3(s, opts);
  }
  throw std::invalid_argument("unknown order selector");
}

OrderVerdict check(const Distribution& f, const Distribution& g, const OrderSelector& sel,
                   const CheckOptions& opts) {
  if (sel.kind == OrderSelector::Kind::leq && (sel.k < 0 || sel.k > 3))
    throw std::invalid_argument("order k must lie in 0..3");
  return check(evaluate_pair(f, g, opts), sel, opts);
}

TransitivityReport transitivity_probe(const std::vector<Distribution>& fs, const OrderSelector& sel,
                                      const CheckOptions& opts) {
  const std::size_t n = fs.size();
  if (n < 3) throw std::invalid_argument("transitivity probe needs at least three distributions");

  TransitivityReport rep;
  rep.verdicts.assign(n, std::vector<OrderVerdict>(n));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);
  parallel_for(pairs.size(), [&](std::size_t q) {
    const auto [i, j] = pairs[q];
    rep.verdicts[i][j] = check(fs[i], fs[j], sel, opts);
  });

  for (const auto& [i, j] : pairs)
    if (rep.verdicts[i][j].status == Status::undecided) ++rep.undecided;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        const OrderVerdict& ac = rep.verdicts[a][c];
        if (rep.verdicts[a][b].status == Status::holds && rep.verdicts[b][c].status == Status::holds &&
            ac.status == Status::fails)
          rep.violations.push_back({a, b, c, ac.witness.value_or(Witness{})});
      }
  return rep;
}

}  // namespace kurtord
