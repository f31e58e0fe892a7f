#include "kurtord/cli.hpp"

#include "kurtord/functionals.hpp"
#include "kurtord/orders.hpp"
#include "kurtord/parallel.hpp"
#include "kurtord/spec_parser.hpp"
#include "report.hpp"
#include "verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

namespace kurtord::cli {
namespace {

struct Common {
  std::size_t grid = 2001;
  double eps_p = 1e-6;
  double tol = 1e-9;
  std::string seed = "0x5EED";
  bool json = false;
  bool csv = false;
  std::string out;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--grid", c.grid, "uniform core grid size")->check(CLI::PositiveNumber);
  app->add_option("--eps-p", c.eps_p, "core grid edge probability")->check(CLI::Range(1e-300, 0.49));
  app->add_option("--tol", c.tol, "relative sign tolerance")->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed, "RNG seed (decimal or 0x hex)");
  app->add_flag("--json", c.json, "JSON output");
  app->add_flag("--csv", c.csv, "CSV output");
  app->add_option("--out", c.out, "write the report to FILE");
}

CheckOptions check_options(const Common& c) {
  CheckOptions o;
  o.grid.points = c.grid;
  o.grid.eps_p = c.eps_p;
  o.tol = c.tol;
  try {
    std::size_t used = 0;
    o.seed = std::stoull(c.seed, &used, 0);
    if (used != c.seed.size()) throw std::invalid_argument("seed");
  } catch (const std::exception&) {
    throw UsageError("invalid --seed '" + c.seed + "'");
  }
  if (c.json && c.csv) throw UsageError("--json and --csv are exclusive");
  return o;
}

OrderSelector parse_selector(const std::string& text) {
  const CallExpr call = parse_call(text);
  const auto no_args = [&] {
    if (!call.args.empty()) throw ParseError("relation '" + call.name + "' takes no arguments", call.args[0].pos);
  };
  if (call.name.size() == 2 && call.name[0] == 'k' && call.name[1] >= '0' && call.name[1] <= '3') {
    no_args();
    return OrderSelector::leq(call.name[1] - '0');
  }
  if (call.name == "gs") {
    double t0 = 0.0;
    for (const auto& a : call.args) {
      if (a.key != "t0") throw ParseError("unknown parameter '" + a.key + "'", a.pos);
      t0 = parse_number(a.value, a.pos);
    }
    return OrderSelector::gs(t0);
  }
  if (call.name == "gss") {
    no_args();
    return OrderSelector::gss();
  }
  if (call.name == "equiv3") {
    no_args();
    return OrderSelector::equiv();
  }
  throw ParseError("unknown relation '" + call.name + "' (k0..k3, gs(t0=..), gss, equiv3)", 0);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Writes to --out when given.
void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + c.out + "' for writing");
  f << text;
}

int exit_for(Status s) {
  switch (s) {
    case Status::holds: return kHolds;
    case Status::fails: return kFails;
    case Status::undecided: return kUndecided;
  }
  return kUndecided;
}

PairRecord evaluate(const Distribution& f, const Distribution& g, const OrderSelector& sel, const CheckOptions& opts) {
  const PairSamples s = evaluate_pair(f, g, opts);
  return {f.describe(), g.describe(), check(s, sel, opts), inflection_values(s, opts)};
}

int cmd_order(const Common& c, const std::string& fs, const std::string& gs, const std::string& rel,
              std::ostream& out) {
  const CheckOptions opts = check_options(c);
  const Distribution f = parse_distribution(fs);
  const Distribution g = parse_distribution(gs);
  const OrderSelector sel = parse_selector(rel);

  const auto start = std::chrono::steady_clock::now();
  const PairRecord rec = evaluate(f, g, sel, opts);
  const double runtime = seconds_since(start);

  std::ostringstream os;
  if (c.json) {
    nlohmann::json j = {{"schema_version", kSchemaVersion},
                        {"command", "order"},
                        {"f", rec.f},
                        {"g", rec.g},
                        {"rel", sel.describe()},
                        {"options", to_json(opts)},
                        {"verdict", to_json(rec.verdict)},
                        {"inflection", to_json(rec.inflection)}};
    os << j.dump(2) << "\n";
  } else if (c.csv) {
    os << csv_header() << "\n" << csv_row(rec) << "\n";
  } else {
    os << "order: F = " << rec.f << ", G = " << rec.g << ", relation " << sel.describe() << "\n";
    os << text_verdict(rec.verdict);
    os << "inflection values: [" << fmt(rec.inflection.p_lo) << ", " << fmt(rec.inflection.p_hi) << "]"
       << (rec.inflection.single_crossing ? "" : " (R'' is not single-crossing)")
       << (rec.inflection.leq3_holds ? "" : " (F <=3 G not established)") << "\n";
    os << text_options(opts);
    os << "runtime: " << fmt(runtime) << " s\n";
  }
  emit(c, out, os.str());
  return exit_for(rec.verdict.status);
}

int cmd_scan(const Common& c, const std::string& fs, const std::string& gs, const std::string& rel,
             std::ostream& out) {
  const CheckOptions opts = check_options(c);
  const std::vector<Distribution> fdists = parse_distribution_range(fs);
  const std::vector<Distribution> gdists = parse_distribution_range(gs);
  const OrderSelector sel = parse_selector(rel);

  const auto start = std::chrono::steady_clock::now();
  std::vector<PairRecord> rows(fdists.size() * gdists.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    rows[i] = evaluate(fdists[i / gdists.size()], gdists[i % gdists.size()], sel, opts);
  });
  const double runtime = seconds_since(start);

  std::ostringstream os;
  if (c.json) {
    nlohmann::json cells = nlohmann::json::array();
    for (const PairRecord& r : rows)
      cells.push_back({{"f", r.f}, {"g", r.g}, {"verdict", to_json(r.verdict)}, {"inflection", to_json(r.inflection)}});
    nlohmann::json j = {{"schema_version", kSchemaVersion}, {"command", "scan"}, {"f", fs},
                        {"g", gs},   {"rel", sel.describe()},    {"options", to_json(opts)},
                        {"cells", cells}};
    os << j.dump(2) << "\n";
  } else if (c.csv) {
    os << csv_header() << "\n";
    for (const PairRecord& r : rows) os << csv_row(r) << "\n";
  } else {
    std::size_t counts[3] = {0, 0, 0};
    os << "scan: F = " << fs << ", G = " << gs << ", relation " << sel.describe() << "\n";
    for (const PairRecord& r : rows) {
      os << "  " << r.f << " vs " << r.g << ": " << to_string(r.verdict.status) << " (margin " << fmt(r.verdict.margin)
         << ")\n";
      ++counts[static_cast<int>(r.verdict.status)];
    }
    os << "cells: " << rows.size() << " (" << counts[0] << " Holds, " << counts[1] << " Fails, " << counts[2]
       << " Undecided)\n";
    os << text_options(opts);
    os << "runtime: " << fmt(runtime) << " s\n";
  }
  emit(c, out, os.str());
  return kHolds;
}

int cmd_functional(const Common& c, const std::string& fs, const std::string& gs, const std::string& fn,
                   std::ostream& out) {
  check_options(c);
  const Distribution f = parse_distribution(fs);
  const CallExpr call = parse_call(fn);
  const auto arg = [&](const char* key) {
    for (const auto& a : call.args)
      if (a.key == key) return parse_number(a.value, a.pos);
    throw ParseError(std::string("missing parameter '") + key + "' for " + call.name, 0);
  };
  const auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& a : call.args)
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return a.key == k; }))
        throw ParseError("unknown parameter '" + a.key + "' for " + call.name, a.pos);
  };

  double value = 0.0;
  bool boundary = false;
  std::string gdesc;
  try {
    if (call.name == "gamma_d") {
      allow({"p"});
      value = gamma_d(f, arg("p")).value;
    } else if (call.name == "gamma_mode") {
      allow({});
      const SkewnessValue v = gamma_mode(f);
      value = v.value;
      boundary = v.boundary;
    } else if (call.name == "kappa_q") {
      allow({"alpha", "eta"});
      value = kappa_q(f, arg("alpha"), arg("eta"));
    } else if (call.name == "eta_f") {
      allow({"q"});
      value = eta_f(f, arg("q"));
    } else if (call.name == "kappa_qf") {
      allow({"alpha"});
      if (gs.empty()) throw UsageError("kappa_qf needs --g");
      const Distribution g = parse_distribution(gs);
      gdesc = g.describe();
      value = kappa_qf(f, g, arg("alpha"));
    } else {
      throw ParseError("unknown functional '" + call.name + "' (gamma_d, gamma_mode, kappa_q, kappa_qf, eta_f)", 0);
    }
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }

  std::ostringstream os;
  if (c.json) {
    nlohmann::json j = {{"schema_version", kSchemaVersion}, {"command", "functional"}, {"f", f.describe()},
                        {"fn", fn}, {"value", value}, {"boundary", boundary}};
    if (!gdesc.empty()) j["g"] = gdesc;
    os << j.dump(2) << "\n";
  } else if (c.csv) {
    os << "paramsF,paramsG,functional,value\n"
       << csv_field(f.describe()) << "," << csv_field(gdesc) << "," << csv_field(fn) << "," << fmt(value) << "\n";
  } else {
    os << fn << " of " << f.describe() << (gdesc.empty() ? "" : " against " + gdesc) << " = " << fmt(value)
       << (boundary ? " (mode at the support boundary)" : "") << "\n";
  }
  emit(c, out, os.str());
  return 0;
}

int cmd_verify(const Common& c, std::ostream& out) {
  const CheckOptions opts = check_options(c);
  const auto start = std::chrono::steady_clock::now();
  const std::vector<VerifyItem> items = run_verify(opts);
  const double runtime = seconds_since(start);
  const bool all = std::all_of(items.begin(), items.end(), [](const VerifyItem& i) { return i.pass; });

  std::ostringstream os;
  if (c.json) {
    nlohmann::json list = nlohmann::json::array();
    for (const VerifyItem& i : items) list.push_back({{"name", i.name}, {"pass", i.pass}, {"detail", i.detail}});
    nlohmann::json j = {{"schema_version", kSchemaVersion}, {"command", "verify"}, {"options", to_json(opts)},
                        {"items", list}, {"all_pass", all}};
    os << j.dump(2) << "\n";
  } else if (c.csv) {
    os << "item,pass,detail\n";
    for (const VerifyItem& i : items)
      os << csv_field(i.name) << "," << (i.pass ? "pass" : "FAIL") << "," << csv_field(i.detail) << "\n";
  } else {
    for (const VerifyItem& i : items) os << (i.pass ? "pass " : "FAIL ") << i.name << ": " << i.detail << "\n";
    os << (all ? "all items pass" : "some items FAIL") << "\n";
    os << text_options(opts);
    os << "runtime: " << fmt(runtime) << " s\n";
  }
  emit(c, out, os.str());
  return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kurtosis and skewness stochastic orders via quantile transport maps", "kurtord"};
  app.require_subcommand(1);

  Common common;
  std::string f, g, rel, fn;

  auto* order = app.add_subcommand("order", "decide one order relation between F and G");
  order->add_option("--f", f, "source distribution, e.g. \"weibull(k=1.5)\"")->required();
  order->add_option("--g", g, "target distribution")->required();
  order->add_option("--rel", rel, "k0..k3, gs(t0=..), gss, equiv3")->required();
  add_common(order, common);

  auto* scan = app.add_subcommand("scan", "sweep parameter ranges, one verdict per (F, G) cell");
  scan->add_option("--f", f, "family with ranges, e.g. \"weibull(k=0.2:5:12:log)\"")->required();
  scan->add_option("--g", g, "family with ranges")->required();
  scan->add_option("--rel", rel, "k0..k3, gs(t0=..), gss, equiv3")->required();
  add_common(scan, common);

  auto* functional = app.add_subcommand("functional", "evaluate a skewness or kurtosis functional");
  functional->add_option("--f", f, "distribution")->required();
  functional->add_option("--g", g, "second distribution for kappa_qf");
  functional->add_option("--fn", fn, "gamma_d(p=..), gamma_mode, kappa_q(alpha=..,eta=..), kappa_qf(alpha=..), eta_f(q=..)")
      ->required();
  add_common(functional, common);

  auto* verify = app.add_subcommand("verify", "reproduce the reference results");
  add_common(verify, common);

  std::vector<const char*> argv{"kurtord"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*order) return cmd_order(common, f, g, rel, out);
    if (*scan) return cmd_scan(common, f, g, rel, out);
    if (*functional) return cmd_functional(common, f, g, fn, out);
    return cmd_verify(common, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace kurtord::cli
