// Acceptance runner: `acceptance <criterion> [suite]`, or no argument for all.
// Prints one PASS/FAIL line per criterion and exits non-zero on any failure.

#include "kurtord/families.hpp"
#include "kurtord/functionals.hpp"
#include "kurtord/orders.hpp"
#include "kurtord/parallel.hpp"
#include "kurtord/transport.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace kurtord;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const Distribution kCube{PowerUnit{3.0}};
const Distribution kUniform{PowerUnit{1.0}};

bool in_band(double x, double centre) { return std::abs(x - centre) <= 1e-3 * centre; }

// t^a with a(a-1)(a-2) >= 0 is 3-convex on (0, 1) and (0, inf).
bool monomial_leq3(double a) { return a * (a - 1.0) * (a - 2.0) >= 0.0; }

// ---------------------------------------------------------------------------
// Cube, uniform and reflected cube root on the unit interval.

Outcome k3_nontransitivity() {
  const auto start = Clock::now();
  const Distribution h{ReflectedCubeRoot{1.0}};
  const Status fg = leq_k(kCube, kUniform, 3).status;
  const Status gh = leq_k(kUniform, h, 3).status;
  const PairSamples fh_s = evaluate_pair(kCube, h);
  const OrderVerdict fh = leq_k(fh_s, 3);
  const std::vector<double> roots = sign_changes(fh_s, 3);
  const OrderVerdict hf = leq_k(h, kCube, 3);
  const double elapsed = seconds_since(start);

  // R_FH''' = 18 (28 t^6 - 20 t^3 + 1): roots from the quadratic in t^3.
  const double lo = std::cbrt((5.0 - 3.0 * std::sqrt(2.0)) / 14.0);
  const double hi = std::cbrt((5.0 + 3.0 * std::sqrt(2.0)) / 14.0);
  const bool roots_ok = roots.size() == 2 && std::abs(roots[0] - lo) < 1e-6 && std::abs(roots[1] - hi) < 1e-6;
  const bool witness_ok = fh.witness && fh.witness->t > lo && fh.witness->t < hi;

  std::ostringstream d;
  d << "F<=3G " << to_string(fg) << ", G<=3H " << to_string(gh) << ", F<=3H " << to_string(fh.status)
    << " (witness t=" << (fh.witness ? num(fh.witness->t) : "-") << "), roots";
  for (double r : roots) d << " " << num(r);
  d << " vs " << num(lo) << " " << num(hi) << ", H<=3F " << to_string(hf.status) << " margin " << num(hf.margin)
    << ", " << num(elapsed) << " s";
  const bool pass = fg == Status::holds && gh == Status::holds && fh.status == Status::fails && roots_ok &&
                    witness_ok && hf.status == Status::holds && elapsed < 1.0;
  return {pass, d.str()};
}

// ---------------------------------------------------------------------------
// Single-crossing counterexample for c in {0.1, 1, 10}.

Outcome gs_nontransitivity() {
  const auto start = Clock::now();
  const double crossing = std::pow(2.0, -2.0 / 3.0);
  const PairSamples fg = evaluate_pair(kCube, kUniform);
  bool ok = true;
  std::ostringstream d;
  for (double c : {0.1, 1.0, 10.0}) {
    const Distribution h{ReflectedCubeRoot{c}};
    const PairSamples gh = evaluate_pair(kUniform, h);
    const PairSamples fh = evaluate_pair(kCube, h);
    const ThresholdRange range = reasonable_thresholds(fh);
    ok = ok && !range.empty && range.lower < 0.0 && range.upper > 0.0;
    d << "c=" << num(c) << ":";
    for (double t0 : {0.5 * range.lower, 0.0, 0.5 * range.upper}) {
      const Status a = leq_gs(fg, t0).status, b = leq_gs(gh, t0).status, x = leq_gs(fh, t0).status;
      ok = ok && a == Status::holds && b == Status::holds && x == Status::fails;
      d << " t0=" << num(t0) << "(" << to_string(a) << "," << to_string(b) << "," << to_string(x) << ")";
    }
    const std::vector<double> roots = sign_changes(fh, 2);
    ok = ok && roots.size() == 1 && std::abs(roots[0] - crossing) < 1e-6;
    d << " crossing " << (roots.size() == 1 ? num(roots[0]) : std::to_string(roots.size()) + " roots") << "; ";
  }
  const double elapsed = seconds_since(start);
  d << num(elapsed) << " s";
  return {ok && elapsed < 1.0, d.str()};
}

// ---------------------------------------------------------------------------
// Monomials t^p against the identity.

Outcome monomials() {
  const auto start = Clock::now();
  std::vector<double> ps;
  for (int i = 0; i < 40; ++i) ps.push_back(0.1 + 3.9 * (i + 0.5) / 40.0);
  std::size_t agree = 0, banded = 0;
  std::ostringstream bad;
  for (double p : ps) {
    if (std::abs(p - 0.5) <= 1e-3 || std::abs(p - 1.0) <= 1e-3 || std::abs(p - 2.0) <= 1e-3) {
      ++banded;
      continue;
    }
    const bool expected = monomial_leq3(p) && monomial_leq3(1.0 / p);
    const Status s = equiv_3(Distribution{PowerUnit{p}}, kUniform).status;
    const bool predicate = monomial_order_predicate(p).equiv3;
    if (s == (expected ? Status::holds : Status::fails) && predicate == expected) ++agree;
    else bad << " p=" << num(p) << ":" << to_string(s);
  }
  const double elapsed = seconds_since(start);
  std::ostringstream d;
  d << agree << "/" << ps.size() << " agree" << bad.str() << ", " << num(elapsed) << " s";
  return {banded == 0 && agree == ps.size() && elapsed < 5.0, d.str()};
}

// ---------------------------------------------------------------------------
// Weibull shapes on a 12x12 log grid and the shape chain triples.

Outcome weibull() {
  const auto start = Clock::now();
  std::vector<double> ks;
  for (int i = 0; i < 12; ++i) ks.push_back(0.2 * std::pow(25.0, i / 11.0));

  struct Cell {
    double k, l;
    Status leq3 = Status::undecided, eq3 = Status::undecided;
  };
  std::vector<Cell> cells;
  for (double k : ks)
    for (double l : ks) cells.push_back({k, l});
  parallel_for(cells.size(), [&](std::size_t i) {
    const PairSamples s = evaluate_pair(Distribution{Weibull{cells[i].k}}, Distribution{Weibull{cells[i].l}});
    cells[i].leq3 = leq_k(s, 3).status;
    cells[i].eq3 = equiv_3(s).status;
  });

  std::size_t checked = 0, agree = 0;
  std::ostringstream bad;
  for (const Cell& c : cells) {
    const double a = c.k / c.l;
    if (c.k != c.l && (in_band(a, 0.5) || in_band(a, 1.0) || in_band(a, 2.0))) continue;
    ++checked;
    const bool leq3 = monomial_leq3(a);
    const bool eq3 = leq3 && monomial_leq3(1.0 / a);
    const WeibullOrders pred = weibull_order_predicate(c.k, c.l);
    if (c.leq3 == (leq3 ? Status::holds : Status::fails) && c.eq3 == (eq3 ? Status::holds : Status::fails) &&
        pred.leq3 == leq3 && pred.equiv3 == eq3)
      ++agree;
    else
      bad << " (" << num(c.k) << "," << num(c.l) << "):" << to_string(c.leq3) << "/" << to_string(c.eq3);
  }

  bool chains = true;
  for (double k : {0.5, 1.0, 2.0}) {
    const TransitivityReport rep = transitivity_probe(
        {Distribution{Weibull{k}}, Distribution{Weibull{1.5 * k}}, Distribution{Weibull{0.7 * k}}}, OrderSelector::leq(3));
    bool found = false;
    for (const auto& v : rep.violations) found = found || (v.a == 0 && v.b == 1 && v.c == 2);
    chains = chains && found;
    if (!found) bad << " no violation for k=" << num(k);
  }
  const double elapsed = seconds_since(start);
  std::ostringstream d;
  d << agree << "/" << checked << " cells agree, chain violations " << (chains ? "found" : "missing") << bad.str()
    << ", " << num(elapsed) << " s";
  return {agree == checked && chains && elapsed < 10.0, d.str()};
}

// ---------------------------------------------------------------------------
// Sinh-arsinh grid and the classification of R''.

struct TableRow {
  double tau;
  SignChange sign;
  Monotonicity mono;
  LimitClass limit;
  Verdict3 leq3;
  Verdict3 gs;
};

Outcome sas() {
  const auto start = Clock::now();
  const double nus[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
  const double taus[] = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0};
  struct Cell {
    double nf, tf, ng, tg;
    Status leq3 = Status::undecided, gs0 = Status::undecided;
  };
  std::vector<Cell> cells;
  for (double nf : nus)
    for (double tf : taus)
      for (double ng : nus)
        for (double tg : taus)
          if (nf != ng || tf != tg) cells.push_back({nf, tf, ng, tg});
  parallel_for(cells.size(), [&](std::size_t i) {
    Cell& c = cells[i];
    const PairSamples s = evaluate_pair(Distribution{SinhArsinh{c.nf, c.tf}}, Distribution{SinhArsinh{c.ng, c.tg}});
    c.leq3 = leq_k(s, 3).status;
    c.gs0 = leq_gs(s, 0.0).status;
  });

  std::size_t n3 = 0, ok3 = 0, ngs = 0, okgs = 0;
  std::ostringstream bad;
  for (const Cell& c : cells) {
    const SasOrders pred = sas_order_predicate(c.nf, c.tf, c.ng, c.tg);
    if (!in_band(c.tf, 2.0 * c.tg)) {
      ++n3;
      const bool want = c.tf >= 2.0 * c.tg;
      if (c.leq3 == (want ? Status::holds : Status::fails) && pred.leq3 == want) ++ok3;
      else bad << " k3(" << c.nf << "," << c.tf << "," << c.ng << "," << c.tg << ")";
    }
    if (!in_band(c.tf, c.tg)) {
      ++ngs;
      const bool want = c.tf > c.tg;
      if (c.gs0 == (want ? Status::holds : Status::fails) && pred.leq_gs0 == want) ++okgs;
      else bad << " gs0(" << c.nf << "," << c.tf << "," << c.ng << "," << c.tg << ")";
    }
  }

  using S = SignChange;
  using M = Monotonicity;
  using L = LimitClass;
  using V = Verdict3;
  const TableRow rows[] = {
      {0.5, S::plus_to_minus, M::none, L::zero, V::no, V::no},
      {1.0, S::none, M::none, L::zero, V::no, V::no},
      {1.5, S::minus_to_plus, M::none, L::zero, V::no, V::iff_t0_zero},
      {2.0, S::minus_to_plus, M::increasing, L::finite, V::yes, V::yes},
      {2.5, S::minus_to_plus, M::increasing, L::sublinear, V::yes, V::yes},
      {3.0, S::minus_to_plus, M::increasing, L::linear, V::yes, V::yes},
      {4.0, S::minus_to_plus, M::increasing, L::superlinear, V::yes, V::yes},
  };
  std::size_t table_ok = 0, table_n = 0;
  for (const TableRow& e : rows)
    for (double nu : {-1.0, 0.0, 1.0}) {
      ++table_n;
      TableRow want = e;
      if (e.tau == 1.0 && nu == 0.0) {
        // identical laws: R'' vanishes identically
        want.mono = M::constant;
        want.leq3 = want.gs = V::yes;
      }
      const R2Profile r = sas_r2_profile({nu, e.tau});
      bool match = r.sign_change == want.sign && r.monotonicity == want.mono && r.limit == want.limit &&
                   r.leq3 == want.leq3 && r.leq_gs == want.gs;
      if (e.tau == 2.0 && nu == 0.0)
        match = match && std::abs(r.limit_plus - 4.0) < 1e-3 && std::abs(r.limit_minus + 4.0) < 1e-3;
      if (match) ++table_ok;
      else bad << " row(" << num(e.tau) << "," << num(nu) << ")";
    }

  const double elapsed = seconds_since(start);
  std::ostringstream d;
  d << "<=3 " << ok3 << "/" << n3 << ", <=gs0 " << okgs << "/" << ngs << ", table " << table_ok << "/" << table_n
    << bad.str() << ", " << num(elapsed) << " s";
  return {ok3 == n3 && okgs == ngs && table_ok == table_n && elapsed < 60.0, d.str()};
}

// ---------------------------------------------------------------------------
// Closed-form special cases of R'' for two sinh-arsinh laws.

// R'' of sinh(tau asinh t) by hand, in extended precision.
long double symmetric_r2(long double tau, long double t) {
  const long double a = std::asinh(t), u2 = 1.0L + t * t, u = std::sqrt(u2);
  return tau * tau * std::sinh(tau * a) / u2 - tau * std::cosh(tau * a) * t / (u2 * u);
}

Outcome sas_closed_forms() {
  std::ostringstream d;
  bool ok = true;

  const TransportMap two{Distribution{SinhArsinh{0.0, 2.0}}, Distribution{StandardNormal{}}};
  for (double t : {-50.0, 50.0}) {
    const double lib = sas_r_derivs({0.0, 2.0}, t).r2;
    const double generic = r_derivs(two, t).r2;
    const double closed = (4 * t * t * t + 6 * t) / std::pow(t * t + 1, 1.5);
    const double want = t > 0 ? 4.0 : -4.0;
    ok = ok && std::abs(lib - want) < 1e-3 && std::abs(generic - closed) < 1e-12 * 4 && std::abs(lib - closed) < 1e-12 * 4;
    d << "r2(" << num(t) << ")=" << num(lib) << " ";
  }

  double worst3 = 0.0;
  const TransportMap three{Distribution{SinhArsinh{0.0, 3.0}}, Distribution{StandardNormal{}}};
  for (int i = 0; i <= 1000; ++i) {
    const double t = -5.0 + 10.0 * i / 1000.0;
    worst3 = std::max({worst3, std::abs(sas_r_derivs({0.0, 3.0}, t).r2 - 24.0 * t),
                       std::abs(r_derivs(three, t).r2 - 24.0 * t)});
  }
  ok = ok && worst3 < 1e-9;
  d << "max|r2-24t|=" << num(worst3) << " ";

  for (double nu : {-1.0, 0.5}) {
    const double want = (1.0 - std::exp(2.0 * nu)) / (2.0 * std::exp(nu));
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double t = -20.0 + 40.0 * i / 400.0;
      worst = std::max(worst, std::abs(sas_r_derivs({nu, 1.0}, t).r2 * std::pow(1.0 + t * t, 1.5) - want));
    }
    ok = ok && worst < 1e-9;
    d << "nu=" << num(nu) << " dev " << num(worst) << " ";
  }

  for (double tau : {0.5, 2.5, 3.0, 4.0}) {
    for (double sgn : {-1.0, 1.0}) {
      const double lib = (std::log(std::abs(sas_r_derivs({0.0, tau}, sgn * 1e4).r2)) -
                          std::log(std::abs(sas_r_derivs({0.0, tau}, sgn * 1e3).r2))) /
                         std::log(10.0);
      const long double ref = (std::log(std::fabs(symmetric_r2(tau, sgn * 1e4L))) -
                               std::log(std::fabs(symmetric_r2(tau, sgn * 1e3L)))) /
                              std::log(10.0L);
      ok = ok && std::abs(lib - (tau - 2.0)) < 0.05 && std::abs(lib - static_cast<double>(ref)) < 1e-9;
      d << "slope(" << num(tau) << (sgn > 0 ? ",+" : ",-") << ")=" << num(lib) << " ";
    }
    const R2Profile row = sas_r2_profile({0.0, tau});
    ok = ok && std::abs(row.slope_plus - (tau - 2.0)) < 0.05 && std::abs(row.slope_minus - (tau - 2.0)) < 0.05;
  }
  return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// Property suites over a pool of distributions from every family.

std::vector<Distribution> family_pool() {
  std::vector<Distribution> pool;
  for (double p : {0.3, 0.5, 1.0, 1.5, 2.0, 3.0}) pool.emplace_back(PowerUnit{p});
  for (double c : {1.0, 10.0}) pool.emplace_back(ReflectedCubeRoot{c});
  for (double k : {0.5, 0.8, 1.0, 1.5, 2.0, 3.5}) pool.emplace_back(Weibull{k});
  for (double nu : {-1.0, 0.0, 1.0})
    for (double tau : {0.5, 1.0, 2.0, 3.0}) pool.emplace_back(SinhArsinh{nu, tau});
  pool.emplace_back(StandardNormal{});
  return pool;
}

struct PoolPair {
  std::size_t i, j;
  std::optional<PairSamples> samples;
  Status leq2 = Status::undecided, leq3 = Status::undecided;
};

const std::vector<Distribution>& pool() {
  static const std::vector<Distribution> p = family_pool();
  return p;
}

std::vector<PoolPair>& pool_pairs() {
  static std::vector<PoolPair> pairs = [] {
    std::vector<PoolPair> out;
    for (std::size_t i = 0; i < pool().size(); ++i)
      for (std::size_t j = 0; j < pool().size(); ++j)
        if (i != j) out.push_back({i, j, std::nullopt});
    parallel_for(out.size(), [&](std::size_t q) {
      PoolPair& pp = out[q];
      pp.samples = evaluate_pair(pool()[pp.i], pool()[pp.j]);
      pp.leq2 = leq_k(*pp.samples, 2).status;
      pp.leq3 = leq_k(*pp.samples, 3).status;
    });
    return out;
  }();
  return pairs;
}

std::string pair_name(const PoolPair& pp) { return pool()[pp.i].describe() + " vs " + pool()[pp.j].describe(); }

Outcome kappa_qf_sign() {
  std::size_t checked = 0, bad = 0;
  std::string first;
  for (const PoolPair& pp : pool_pairs()) {
    if (pp.leq3 != Status::holds) continue;
    for (double a : {0.01, 0.05, 0.1, 0.25}) {
      ++checked;
      const double v = kappa_qf(pool()[pp.i], pool()[pp.j], a);
      if (v < -1e-9) {
        if (!bad++) first = " first: " + pair_name(pp) + " alpha " + num(a) + " value " + num(v);
      }
    }
  }
  return {checked > 0 && bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " nonnegative" + first};
}

// gamma_d(F, p) <= gamma_d(G, p) whenever F <=_2 G, taken literally.
Outcome gamma_d_leq2() {
  std::size_t checked = 0, bad = 0;
  std::string first;
  for (const PoolPair& pp : pool_pairs()) {
    if (pp.leq2 != Status::holds) continue;
    for (int k = 1; k <= 9; ++k) {
      const double p = k / 10.0;
      ++checked;
      const double gf = gamma_d(pool()[pp.i], p).value, gg = gamma_d(pool()[pp.j], p).value;
      if (gf > gg + 1e-9) {
        if (!bad++) first = " first: " + pair_name(pp) + " p=" + num(p) + " " + num(gf) + " > " + num(gg);
      }
    }
  }
  return {checked > 0 && bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " hold" + first};
}

// R''(F^{-1}(p)) = f^2 / g (gamma_d(F, p) - gamma_d(G, p)), so F <=_2 G gives the
// opposite inequality.
Outcome gamma_d_leq2_reversed() {
  std::size_t checked = 0, bad = 0;
  std::string first;
  for (const PoolPair& pp : pool_pairs()) {
    if (pp.leq2 != Status::holds) continue;
    for (int k = 1; k <= 9; ++k) {
      const double p = k / 10.0;
      ++checked;
      const double gf = gamma_d(pool()[pp.i], p).value, gg = gamma_d(pool()[pp.j], p).value;
      if (gf < gg - 1e-9 * std::max({1.0, std::abs(gf), std::abs(gg)})) {
        if (!bad++) first = " first: " + pair_name(pp) + " p=" + num(p) + " " + num(gf) + " < " + num(gg);
      }
    }
  }
  return {checked > 0 && bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " hold" + first};
}

Outcome gs_implication() {
  std::size_t checked = 0, bad = 0;
  std::string first;
  for (const PoolPair& pp : pool_pairs()) {
    if (pp.leq3 != Status::holds) continue;
    const ThresholdRange range = reasonable_thresholds(*pp.samples);
    if (range.empty) continue;
    std::vector<double> t0s;
    for (double f : {0.01, 0.25, 0.5, 0.75, 0.99}) t0s.push_back(range.lower + f * (range.upper - range.lower));
    if (range.lower < 0.0 && range.upper > 0.0) t0s.push_back(0.0);
    for (double t0 : t0s) {
      ++checked;
      const Status s = leq_gs(*pp.samples, t0).status;
      if (s != Status::holds) {
        if (!bad++) first = " first: " + pair_name(pp) + " t0=" + num(t0) + " " + to_string(s);
      }
    }
  }
  return {checked > 0 && bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " hold" + first};
}

Outcome composition() {
  const std::vector<std::vector<Distribution>> triples = {
      {kCube, kUniform, Distribution{ReflectedCubeRoot{1.0}}},
      {Distribution{Weibull{1.0}}, Distribution{Weibull{1.5}}, Distribution{Weibull{2.0}}},
      {Distribution{Weibull{0.6}}, Distribution{StandardNormal{}}, Distribution{SinhArsinh{0.5, 2.0}}},
      {Distribution{SinhArsinh{-1.0, 0.7}}, Distribution{PowerUnit{2.0}}, Distribution{Weibull{3.0}}},
      {Distribution{StandardNormal{}}, Distribution{SinhArsinh{1.0, 3.0}}, Distribution{SinhArsinh{-2.0, 1.5}}},
      {Distribution{ReflectedCubeRoot{10.0}}, Distribution{Weibull{1.2}}, Distribution{PowerUnit{0.5}}},
  };
  double worst = 0.0;
  std::string where;
  for (const auto& tr : triples)
    for (int i = 1; i < 40; ++i) {
      const double t = tr[0].quantile(i / 40.0);
      const ComposeResiduals c = compose_check(tr[0], tr[1], tr[2], t);
      const double m = std::max({c.r, c.r2, c.r3});
      if (m > worst) {
        worst = m;
        where = tr[0].describe() + "," + tr[1].describe() + "," + tr[2].describe() + " t=" + num(t);
      }
    }
  return {worst < 1e-7, "max residual " + num(worst) + " at " + where};
}

Outcome inverse_r3_identity() {
  double worst = 0.0;
  std::string where;
  for (const PoolPair& pp : pool_pairs()) {
    const Distribution& f = pool()[pp.i];
    const Distribution& g = pool()[pp.j];
    for (int k = 1; k < 20; ++k) {
      const double t = g.quantile(k / 20.0);
      const RDerivs direct = r_derivs(TransportMap{g, f}, t);
      const double via = inverse_r3({f, g}, t);
      const double err = std::abs(direct.r3 - via) / std::max({1.0, std::abs(direct.r3), direct.scale3});
      if (err > worst) {
        worst = err;
        where = pair_name(pp) + " t=" + num(t);
      }
    }
  }
  return {worst < 1e-6, "max relative error " + num(worst) + " at " + where};
}

double fd_step(const Distribution& d, double t, double rel) {
  double h = rel * std::max(1.0, std::abs(t));
  const Support s = d.support();
  if (std::isfinite(s.lower)) h = std::min(h, 1e-4 * (t - s.lower));
  if (std::isfinite(s.upper)) h = std::min(h, 1e-4 * (s.upper - t));
  return h;
}

Outcome finite_differences() {
  double worst_density = 0.0, worst_map = 0.0;
  std::string where;
  const auto rel = [](double fd, double exact, double scale) {
    return std::abs(fd - exact) / std::max({1.0, std::abs(exact), scale});
  };
  for (const Distribution& d : pool())
    for (int i = 1; i < 100; ++i) {
      const double t = d.quantile(i / 100.0);
      const double h = fd_step(d, t, 1e-5);
      const double e = std::max({rel((d.cdf(t + h) - d.cdf(t - h)) / (2 * h), d.pdf(t), 0.0),
                                 rel((d.pdf(t + h) - d.pdf(t - h)) / (2 * h), d.pdf_d1(t), 0.0),
                                 rel((d.pdf_d1(t + h) - d.pdf_d1(t - h)) / (2 * h), d.pdf_d2(t), 0.0)});
      if (e > worst_density) {
        worst_density = e;
        where = d.describe() + " t=" + num(t);
      }
    }
  for (const PoolPair& pp : pool_pairs()) {
    const Distribution& f = pool()[pp.i];
    const TransportMap m{f, pool()[pp.j]};
    for (int i = 1; i < 20; ++i) {
      const double t = f.quantile(i / 20.0);
      const double h = fd_step(f, t, 1e-4);
      const RDerivs d = r_derivs(m, t), lo = r_derivs(m, t - h), hi = r_derivs(m, t + h);
      const double e = std::max({rel((hi.r - lo.r) / (2 * h), d.r1, 0.0), rel((hi.r1 - lo.r1) / (2 * h), d.r2, d.scale2),
                                 rel((hi.r2 - lo.r2) / (2 * h), d.r3, d.scale3)});
      if (e > worst_map) {
        worst_map = e;
        if (e > worst_density) where = pair_name(pp) + " t=" + num(t);
      }
    }
  }
  return {worst_density < 1e-5 && worst_map < 1e-5,
          "densities " + num(worst_density) + ", transport " + num(worst_map) + ", worst at " + where};
}

// Solves phi(x) = target for x in [lo, hi]; nullopt without a sign change.
std::optional<double> solve(const std::function<double(double)>& phi, double target, double lo, double hi) {
  const auto fn = [&](double x) { return phi(x) - target; };
  if ((fn(lo) < 0.0) == (fn(hi) < 0.0)) return std::nullopt;
  const auto r = boost::math::tools::bisect(fn, lo, hi, boost::math::tools::eps_tolerance<double>(50));
  return 0.5 * (r.first + r.second);
}

struct ChainCount {
  std::size_t chains = 0, violations = 0, undecided = 0;
  std::string first;
};

// Every A <= B <= C chain within the set must give A <= C.
ChainCount chains_within(const std::vector<Distribution>& set) {
  ChainCount out;
  const TransitivityReport rep = transitivity_probe(set, OrderSelector::leq(3));
  const std::size_t n = set.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        if (rep.verdicts[a][b].status != Status::holds || rep.verdicts[b][c].status != Status::holds) continue;
        ++out.chains;
        const Status ac = rep.verdicts[a][c].status;
        if (ac == Status::fails && !out.violations++)
          out.first = " first: " + set[a].describe() + " " + set[b].describe() + " " + set[c].describe();
        if (ac == Status::undecided) ++out.undecided;
      }
  return out;
}

Outcome equal_gamma_transitivity() {
  std::ostringstream d;
  bool ok = true;
  const double taus[] = {0.4, 0.7, 1.0, 1.6, 2.5, 4.0, 6.0};

  // Density-based sets: symmetric laws and a Weibull shape at p = 1/2, and
  // sinh-arsinh laws matched to a Weibull at p = 0.3.
  std::vector<std::pair<std::string, std::vector<Distribution>>> sets;
  {
    std::vector<Distribution> s{Distribution{StandardNormal{}}, Distribution{Weibull{1.0 / (1.0 - std::log(2.0))}}};
    for (double tau : taus) s.emplace_back(SinhArsinh{0.0, tau});
    sets.emplace_back("T_D(0.5, 0)", s);
  }
  {
    const Distribution w{Weibull{1.5}};
    const double target = gamma_d(w, 0.3).value;
    std::vector<Distribution> s{w};
    for (double tau : taus)
      if (auto nu = solve([&](double x) { return gamma_d(Distribution{SinhArsinh{x, tau}}, 0.3).value; }, target, -20.0, 20.0))
        s.emplace_back(SinhArsinh{*nu, tau});
    if (auto k = solve([&](double x) { return gamma_d(Distribution{Weibull{x}}, 0.3).value; }, target, 3.0, 50.0))
      s.emplace_back(Weibull{*k});
    sets.emplace_back("T_D(0.3, " + num(target) + ")", s);
  }
  // Mode-based set matched to Weibull{2}.
  {
    const Distribution w{Weibull{2.0}};
    const double target = gamma_mode(w).value;
    std::vector<Distribution> s{w};
    for (double tau : taus)
      if (auto nu = solve([&](double x) { return gamma_mode(Distribution{SinhArsinh{x, tau}}).value; }, target, -20.0, 20.0))
        s.emplace_back(SinhArsinh{*nu, tau});
    sets.emplace_back("T_Mode(" + num(target) + ")", s);
  }

  for (const auto& [name, set] : sets) {
    const bool member = name.rfind("T_Mode", 0) == 0
                            ? same_transitivity_set(set, TransitivitySetTag::mode(gamma_mode(set[0]).value))
                            : same_transitivity_set(set, TransitivitySetTag::density(name == "T_D(0.5, 0)" ? 0.5 : 0.3,
                                                                                      gamma_d(set[0], name == "T_D(0.5, 0)" ? 0.5 : 0.3).value));
    const ChainCount c = chains_within(set);
    ok = ok && member && c.chains > 0 && c.violations == 0 && c.undecided == 0;
    d << name << ": " << set.size() << " laws" << (member ? "" : " (membership check failed)") << ", " << c.chains
      << " chains, " << c.violations << " violations, " << c.undecided << " undecided" << c.first << "; ";
  }
  return {ok, d.str()};
}

Outcome sas_transitivity() {
  std::vector<Distribution> grid;
  for (double nu : {-2.0, -1.0, 0.0, 1.0, 2.0})
    for (double tau : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0}) grid.emplace_back(SinhArsinh{nu, tau});
  const TransitivityReport k3 = transitivity_probe(grid, OrderSelector::leq(3));
  const TransitivityReport gs = transitivity_probe(grid, OrderSelector::gs(0.0));
  std::ostringstream d;
  d << grid.size() << " laws; <=3: " << k3.violations.size() << " violations, " << k3.undecided
    << " undecided; <=gs0: " << gs.violations.size() << " violations, " << gs.undecided << " undecided";
  return {k3.violations.empty() && gs.violations.empty(), d.str()};
}

Outcome reflexivity() {
  std::size_t bad = 0, checked = 0;
  for (const Distribution& d : pool())
    for (int k = 0; k <= 3; ++k) {
      ++checked;
      if (leq_k(d, d, k).status != Status::holds) ++bad;
    }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " hold"};
}

Outcome equiv3_consistency() {
  std::map<std::pair<std::size_t, std::size_t>, Status> leq3;
  for (const PoolPair& pp : pool_pairs()) leq3[{pp.i, pp.j}] = pp.leq3;
  std::size_t bad = 0;
  std::string first;
  for (const PoolPair& pp : pool_pairs()) {
    const bool both = pp.leq3 == Status::holds && leq3[{pp.j, pp.i}] == Status::holds;
    const bool eq = equiv_3(*pp.samples).status == Status::holds;
    if (both != eq && !bad++) first = " first: " + pair_name(pp);
  }
  return {bad == 0, std::to_string(pool_pairs().size() - bad) + "/" + std::to_string(pool_pairs().size()) + " agree" + first};
}

// Symmetric pairs: <=_gs^0 against convexity of R right of the centre and
// concavity left of it.
Outcome symmetric_gs() {
  std::vector<Distribution> sym{Distribution{StandardNormal{}}};
  for (double tau : {0.5, 0.8, 1.5, 2.0, 3.0}) sym.emplace_back(SinhArsinh{0.0, tau});
  std::size_t checked = 0, agree = 0;
  std::string first;
  for (const Distribution& f : sym)
    for (const Distribution& g : sym) {
      const TransportMap m{f, g};
      const double c = f.quantile(0.5), lo = f.quantile(1e-6), hi = f.quantile(1.0 - 1e-6);
      const auto rr = [&](double t) { return r(m, t); };
      const auto neg = [&](double t) { return -r(m, t); };
      const Status right = kconvex_check(rr, {c, hi}, 2, 400).status;
      const Status left = kconvex_check(neg, {lo, c}, 2, 400).status;
      const bool classical = right == Status::holds && left == Status::holds;
      const Status gs = leq_gs(f, g, 0.0).status;
      ++checked;
      if ((gs == Status::holds) == classical && gs != Status::undecided) ++agree;
      else if (first.empty()) first = " first: " + f.describe() + " vs " + g.describe() + " gs " + to_string(gs);
    }
  return {agree == checked, std::to_string(agree) + "/" + std::to_string(checked) + " agree" + first};
}

// For fixed shapes with tau_F >= 2 tau_G, kappa_qf is nonnegative for every
// skewness pair. Other shape pairs carry no sign prediction and are reported only.
Outcome kappa_qf_sas_sign() {
  const double nus[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
  const std::pair<double, double> shapes[] = {{4.0, 1.0}, {2.5, 1.0}, {3.0, 1.5}, {1.0, 0.5}, {1.0, 3.0}, {0.5, 2.0}};
  std::size_t predicted = 0, bad = 0, unpredicted = 0, mixed = 0;
  std::string first;
  for (const auto& [tf, tg] : shapes)
    for (double a : {0.01, 0.05, 0.1, 0.25}) {
      bool pos = false, neg = false;
      for (double nf : nus)
        for (double ng : nus) {
          const double v = kappa_qf(Distribution{SinhArsinh{nf, tf}}, Distribution{SinhArsinh{ng, tg}}, a);
          pos |= v > 1e-9;
          neg |= v < -1e-9;
        }
      if (tf >= 2.0 * tg) {
        ++predicted;
        if (neg && !bad++) first = " first: tau " + num(tf) + "/" + num(tg) + " alpha " + num(a);
      } else {
        ++unpredicted;
        mixed += pos && neg;
      }
    }
  return {bad == 0, std::to_string(predicted - bad) + "/" + std::to_string(predicted) +
                        " predicted groups nonnegative" + first + "; " + std::to_string(mixed) + "/" +
                        std::to_string(unpredicted) + " unpredicted groups change sign with nu"};
}

using Runner = Outcome (*)();

const std::vector<std::pair<std::string, Runner>>& properties() {
  static const std::vector<std::pair<std::string, Runner>> suites = {
      {"kappa_qf_sign", kappa_qf_sign},
      {"gamma_d_leq2", gamma_d_leq2},
      {"gamma_d_leq2_reversed", gamma_d_leq2_reversed},
      {"gs_implication", gs_implication},
      {"composition", composition},
      {"inverse_r3", inverse_r3_identity},
      {"finite_differences", finite_differences},
      {"equal_gamma_transitivity", equal_gamma_transitivity},
      {"sas_transitivity", sas_transitivity},
      {"reflexivity", reflexivity},
      {"equiv3_consistency", equiv3_consistency},
      {"symmetric_gs", symmetric_gs},
      {"kappa_qf_sas_sign", kappa_qf_sas_sign},
  };
  return suites;
}

const std::vector<std::pair<std::string, Runner>>& criteria() {
  static const std::vector<std::pair<std::string, Runner>> list = {
      {"k3_nontransitivity", k3_nontransitivity}, {"gs_nontransitivity", gs_nontransitivity}, {"monomials", monomials},
      {"weibull", weibull},   {"sas", sas},     {"sas_closed_forms", sas_closed_forms},
  };
  return list;
}

bool report(const std::string& name, Runner fn) {
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

bool run_properties(const std::string& only) {
  const auto start = Clock::now();
  bool ok = true, found = false;
  for (const auto& [name, fn] : properties()) {
    if (!only.empty() && name != only) continue;
    found = true;
    ok = report("properties." + name, fn) && ok;
  }
  if (!found) {
    std::printf("FAIL properties: unknown suite '%s'\n", only.c_str());
    return false;
  }
  const double elapsed = seconds_since(start);
  if (only.empty()) {
    std::printf("%s properties.runtime: %s s (limit 300 s)\n", elapsed < 300.0 ? "PASS" : "FAIL", num(elapsed).c_str());
    ok = ok && elapsed < 300.0;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string which = argc > 1 ? argv[1] : "";
  const std::string sub = argc > 2 ? argv[2] : "";
  bool ok = true, found = false;
  for (const auto& [name, fn] : criteria()) {
    if (!which.empty() && name != which) continue;
    found = true;
    ok = report(name, fn) && ok;
  }
  if (which.empty() || which == "properties") {
    found = true;
    ok = run_properties(sub) && ok;
  }
  if (!found) {
    std::fprintf(stderr, "unknown criterion '%s'\n", which.c_str());
    return 2;
  }
  return ok ? 0 : 1;
}
