#include "verify.hpp"

#include "kurtord/families.hpp"
#include "kurtord/parallel.hpp"
#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kurtord::cli {
namespace {

const Distribution kCube{PowerUnit{3.0}};
const Distribution kUniform{PowerUnit{1.0}};

std::string statuses(std::initializer_list<Status> s) {
  std::string out;
  for (Status x : s) out += (out.empty() ? "" : ", ") + std::string(to_string(x));
  return out;
}

void cube_root_counterexample(const CheckOptions& opts, std::vector<VerifyItem>& items) {
  const Distribution h{ReflectedCubeRoot{1.0}};
  const Status fg = leq_k(kCube, kUniform, 3, opts).status;
  const Status gh = leq_k(kUniform, h, 3, opts).status;
  const PairSamples fh_samples = evaluate_pair(kCube, h, opts);
  const OrderVerdict fh = leq_k(fh_samples, 3, opts);
  items.push_back({"cube/uniform/cube-root: F<=3G, G<=3H, not F<=3H",
                   fg == Status::holds && gh == Status::holds && fh.status == Status::fails,
                   statuses({fg, gh, fh.status})});

  const std::vector<double> roots = sign_changes(fh_samples, 3, 0.0, opts);
  const double lo = std::cbrt((5.0 - 3.0 * std::sqrt(2.0)) / 14.0);
  const double hi = std::cbrt((5.0 + 3.0 * std::sqrt(2.0)) / 14.0);
  const bool ok = roots.size() == 2 && std::abs(roots[0] - lo) < 1e-6 && std::abs(roots[1] - hi) < 1e-6;
  std::ostringstream d;
  d << "roots";
  for (double r : roots) d << " " << fmt(r);
  d << " expected " << fmt(lo) << " " << fmt(hi);
  items.push_back({"cube/cube-root: negative region of R'''", ok, d.str()});

  const OrderVerdict hf = leq_k(h, kCube, 3, opts);
  items.push_back({"cube-root <=3 cube", hf.status == Status::holds,
                   std::string(to_string(hf.status)) + ", margin " + fmt(hf.margin)});
}

void gs_counterexample(const CheckOptions& opts, std::vector<VerifyItem>& items) {
  const double crossing = std::pow(2.0, -2.0 / 3.0);
  for (double c : {0.1, 1.0, 10.0}) {
    const Distribution h{ReflectedCubeRoot{c}};
    const PairSamples fg = evaluate_pair(kCube, kUniform, opts);
    const PairSamples gh = evaluate_pair(kUniform, h, opts);
    const PairSamples fh = evaluate_pair(kCube, h, opts);
    const ThresholdRange range = reasonable_thresholds(fh, opts);

    bool ok = !range.empty;
    std::ostringstream d;
    for (double t0 : {0.5 * range.lower, 0.0, 0.5 * range.upper}) {
      const Status a = leq_gs(fg, t0, opts).status;
      const Status b = leq_gs(gh, t0, opts).status;
      const Status x = leq_gs(fh, t0, opts).status;
      ok = ok && a == Status::holds && b == Status::holds && x == Status::fails;
      d << "t0=" << fmt(t0) << ": " << statuses({a, b, x}) << "; ";
    }
    const std::vector<double> roots = sign_changes(fh, 2, 0.0, opts);
    ok = ok && roots.size() == 1 && std::abs(roots[0] - crossing) < 1e-6;
    d << "R'' crossing";
    for (double r : roots) d << " " << fmt(r);
    items.push_back({"gs counterexample c=" + fmt(c), ok, d.str()});
  }
}

void monomials(const CheckOptions& opts, std::vector<VerifyItem>& items) {
  bool ok = true;
  std::ostringstream d;
  for (double p : {0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0}) {
    const Status s = equiv_3(Distribution{PowerUnit{p}}, kUniform, opts).status;
    const bool expected = monomial_order_predicate(p).equiv3;
    ok = ok && s == (expected ? Status::holds : Status::fails);
    d << "p=" << fmt(p) << ":" << to_string(s) << " ";
  }
  items.push_back({"monomial =3 classification", ok, d.str()});
}

void weibull_chain(const CheckOptions& opts, std::vector<VerifyItem>& items) {
  const Distribution w1{Weibull{1.0}}, w15{Weibull{1.5}}, w07{Weibull{0.7}};
  const Status a = leq_k(w1, w15, 3, opts).status;
  const Status a_eq = equiv_3(w1, w15, opts).status;
  const Status b = equiv_3(w15, w07, opts).status;
  const Status c = leq_k(w1, w07, 3, opts).status;
  items.push_back({"Weibull chain W(1) <=3 W(1.5) =3 W(0.7), not W(1) <=3 W(0.7)",
                   a == Status::holds && a_eq == Status::fails && b == Status::holds && c == Status::fails,
                   statuses({a, a_eq, b, c})});
}

void sas_grid(const CheckOptions& opts, std::vector<VerifyItem>& items) {
  const double nus[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
  const double taus[] = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0};
  struct Cell {
    double nf, tf, ng, tg;
    Status leq3, gs0;
  };
  std::vector<Cell> cells;
  for (double nf : nus)
    for (double tf : taus)
      for (double ng : nus)
        for (double tg : taus)
          if (nf != ng || tf != tg) cells.push_back({nf, tf, ng, tg, Status::undecided, Status::undecided});
  parallel_for(cells.size(), [&](std::size_t i) {
    Cell& c = cells[i];
    const PairSamples s = evaluate_pair(Distribution{SinhArsinh{c.nf, c.tf}}, Distribution{SinhArsinh{c.ng, c.tg}}, opts);
    c.leq3 = leq_k(s, 3, opts).status;
    c.gs0 = leq_gs(s, 0.0, opts).status;
  });

  std::size_t checked3 = 0, bad3 = 0, checked_gs = 0, bad_gs = 0;
  for (const Cell& c : cells) {
    const SasOrders pred = sas_order_predicate(c.nf, c.tf, c.ng, c.tg);
    if (std::abs(c.tf - 2.0 * c.tg) > 1e-3 * 2.0 * c.tg) {
      ++checked3;
      if (c.leq3 != (pred.leq3 ? Status::holds : Status::fails)) ++bad3;
    }
    if (std::abs(c.tf - c.tg) > 1e-3 * c.tg) {
      ++checked_gs;
      if (c.gs0 != (pred.leq_gs0 ? Status::holds : Status::fails)) ++bad_gs;
    }
  }
  items.push_back({"sinh-arsinh grid: <=3 iff tauF >= 2 tauG", bad3 == 0,
                   std::to_string(checked3 - bad3) + "/" + std::to_string(checked3) + " cells agree"});
  items.push_back({"sinh-arsinh grid: <=gs0 iff tauF > tauG", bad_gs == 0,
                   std::to_string(checked_gs - bad_gs) + "/" + std::to_string(checked_gs) + " cells agree"});
}

struct TableRow {
  double tau;
  SignChange sign;
  Monotonicity mono;
  LimitClass limit;
  Verdict3 leq3;
  Verdict3 gs;
};

void table_rows(std::vector<VerifyItem>& items) {
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
  for (const TableRow& e : rows) {
    bool ok = true;
    std::ostringstream d;
    for (double nu : {-1.0, 0.0, 1.0}) {
      const R2Profile r = sas_r2_profile({nu, e.tau});
      TableRow want = e;
      if (e.tau == 1.0 && nu == 0.0) {
        // identical laws: R'' vanishes
        want.mono = M::constant;
        want.leq3 = want.gs = V::yes;
      }
      bool match = r.sign_change == want.sign && r.monotonicity == want.mono && r.limit == want.limit &&
                   r.leq3 == want.leq3 && r.leq_gs == want.gs;
      if (e.tau == 2.0 && nu == 0.0)
        match = match && std::abs(r.limit_plus - 4.0) < 1e-3 && std::abs(r.limit_minus + 4.0) < 1e-3;
      ok = ok && match;
      d << "nu=" << fmt(nu) << ": " << to_string(r.sign_change) << ", " << to_string(r.monotonicity) << ", "
        << to_string(r.limit) << ", " << to_string(r.leq3) << ", " << to_string(r.leq_gs) << "; ";
    }
    items.push_back({"R'' behaviour, tau~=" + fmt(e.tau), ok, d.str()});
  }
}

void special_cases(std::vector<VerifyItem>& items) {
  {
    const SasReduced red{0.0, 2.0};
    const double up = sas_r_derivs(red, 50.0).r2, down = sas_r_derivs(red, -50.0).r2;
    items.push_back({"tau~=2: R''(+-50) near +-4", std::abs(up - 4.0) < 1e-3 && std::abs(down + 4.0) < 1e-3,
                     fmt(down) + " " + fmt(up)});
  }
  {
    const SasReduced red{0.0, 3.0};
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = -5.0 + 10.0 * i / 1000.0;
      worst = std::max(worst, std::abs(sas_r_derivs(red, t).r2 - 24.0 * t));
    }
    items.push_back({"tau~=3: R''(t) = 24t", worst < 1e-9, "max deviation " + fmt(worst)});
  }
  for (double nu : {-1.0, 0.5}) {
    const SasReduced red{nu, 1.0};
    const double want = (1.0 - std::exp(2.0 * nu)) / (2.0 * std::exp(nu));
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double t = -20.0 + 40.0 * i / 400.0;
      worst = std::max(worst, std::abs(sas_r_derivs(red, t).r2 * std::pow(std::hypot(1.0, t), 3) - want));
    }
    items.push_back({"tau~=1, nu~=" + fmt(nu) + ": R''(1+t^2)^{3/2} constant", worst < 1e-9,
                     "max deviation " + fmt(worst)});
  }
  for (double tau : {0.5, 2.5, 3.0, 4.0}) {
    const R2Profile r = sas_r2_profile({0.0, tau});
    const bool ok = std::abs(r.slope_plus - (tau - 2.0)) < 0.05 && std::abs(r.slope_minus - (tau - 2.0)) < 0.05;
    items.push_back({"tau~=" + fmt(tau) + ": log-log slope of |R''|", ok,
                     fmt(r.slope_minus) + " " + fmt(r.slope_plus)});
  }
}

}  // namespace

std::vector<VerifyItem> run_verify(const CheckOptions& opts) {
  std::vector<VerifyItem> items;
  cube_root_counterexample(opts, items);
  gs_counterexample(opts, items);
  monomials(opts, items);
  weibull_chain(opts, items);
  sas_grid(opts, items);
  table_rows(items);
  special_cases(items);
  return items;
}

}  // namespace kurtord::cli
