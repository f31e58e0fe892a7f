#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace kurtord::cli {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_seed(std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llX", static_cast<unsigned long long>(seed));
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json to_json(const CheckOptions& opts) {
  return {{"grid_points", opts.grid.points},
          {"eps_p", opts.grid.eps_p},
          {"tail_levels", opts.grid.tail_levels},
          {"tail_log_mass", opts.grid.tail_log_mass},
          {"tol", opts.tol},
          {"undecided_band", opts.undecided_band},
          {"seed", fmt_seed(opts.seed)}};
}

nlohmann::json to_json(const OrderVerdict& v) {
  nlohmann::json j = {{"status", to_string(v.status)},
                      {"margin", v.margin},
                      {"points", v.points},
                      {"skipped", v.skipped},
                      {"failed", v.failed},
                      {"witness", nullptr}};
  if (v.witness) {
    const Witness& w = *v.witness;
    j["witness"] = {{"quantity", w.quantity},
                    {"p", w.p},
                    {"tail", w.level.side == Tail::lower ? "lower" : "upper"},
                    {"log_tail_mass", w.level.log_mass},
                    {"t", w.t},
                    {"value", w.value},
                    {"nodes", w.nodes}};
  }
  return j;
}

nlohmann::json to_json(const InflectionReport& r) {
  return {{"p_lo", r.p_lo},
          {"p_hi", r.p_hi},
          {"degenerate_low", r.degenerate_low},
          {"degenerate_high", r.degenerate_high},
          {"single_crossing", r.single_crossing},
          {"leq3_holds", r.leq3_holds}};
}

std::string csv_header() { return "paramsF,paramsG,verdict,margin,p_lo,p_hi"; }

std::string csv_row(const PairRecord& r) {
  return csv_field(r.f) + "," + csv_field(r.g) + "," + to_string(r.verdict.status) + "," + fmt(r.verdict.margin) +
         "," + fmt(r.inflection.p_lo) + "," + fmt(r.inflection.p_hi);
}

std::string text_verdict(const OrderVerdict& v) {
  std::ostringstream os;
  os << "verdict: " << to_string(v.status) << "\n";
  os << "margin: " << fmt(v.margin) << "\n";
  os << "points: " << v.points << " evaluated, " << v.skipped << " tail levels skipped, " << v.failed
     << " core levels failed\n";
  if (v.witness) {
    const Witness& w = *v.witness;
    os << "witness: " << w.quantity << " = " << fmt(w.value);
    if (w.nodes.empty() || w.quantity == "R''-t0") {
      os << " at t = " << fmt(w.t) << " (p = " << fmt(w.p) << ", log tail mass " << fmt(w.level.log_mass) << " "
         << (w.level.side == Tail::lower ? "lower" : "upper") << ")";
    }
    if (!w.nodes.empty()) {
      os << " nodes";
      for (double x : w.nodes) os << " " << fmt(x);
    }
    os << "\n";
  }
  return os.str();
}

std::string text_options(const CheckOptions& opts) {
  std::ostringstream os;
  os << "grid: " << opts.grid.points << " core levels on [" << fmt(opts.grid.eps_p) << ", 1-" << fmt(opts.grid.eps_p)
     << "], " << opts.grid.tail_levels << " tail levels per side to log mass " << fmt(opts.grid.tail_log_mass)
     << "\n";
  os << "tol: " << fmt(opts.tol) << " (undecided band x" << fmt(opts.undecided_band) << "), seed " << fmt_seed(opts.seed)
     << "\n";
  return os.str();
}

}  // namespace kurtord::cli
