#include "kurtord/spec_parser.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>

namespace kurtord {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= text_.size();
  }
  std::size_t pos() const { return i_; }
  bool accept(char c) {
    skip_ws();
    if (i_ < text_.size() && text_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", i_);
  }
  std::string identifier() {
    skip_ws();
    const std::size_t start = i_;
    while (i_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_')) ++i_;
    if (start == i_) throw ParseError("expected a name", start);
    return lower(text_.substr(start, i_ - start));
  }
  // Raw value up to the next ',' or ')'.
  std::pair<std::string, std::size_t> value() {
    skip_ws();
    const std::size_t start = i_;
    while (i_ < text_.size() && text_[i_] != ',' && text_[i_] != ')') ++i_;
    std::string_view v = text_.substr(start, i_ - start);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    if (v.empty()) throw ParseError("expected a value", start);
    return {std::string(v), start};
  }

 private:
  std::string_view text_;
  std::size_t i_ = 0;
};

struct FamilyKeys {
  std::vector<std::string> required;
};

const std::map<std::string, FamilyKeys>& families() {
  static const std::map<std::string, FamilyKeys> table = {
      {"power", {{"p"}}},
      {"refcube", {{"c"}}},
      {"weibull", {{"k"}}},
      {"sas", {{"nu", "tau"}}},
      {"normal", {{}}},
  };
  return table;
}

Distribution build(const std::string& name, const std::map<std::string, double>& v, std::size_t pos) {
  const auto get = [&](const char* key) { return v.at(key); };
  const double loc = v.count("loc") ? v.at("loc") : 0.0;
  const double scale = v.count("scale") ? v.at("scale") : 1.0;
  try {
    FamilySpec spec;
    if (name == "power") spec = PowerUnit{get("p")};
    else if (name == "refcube") spec = ReflectedCubeRoot{get("c")};
    else if (name == "weibull") spec = Weibull{get("k")};
    else if (name == "sas") spec = SinhArsinh{get("nu"), get("tau")};
    else spec = StandardNormal{};
    return Distribution(spec, loc, scale);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), pos);
  }
}

// Checks the keys of a call against its family and returns the family name.
const FamilyKeys& check_keys(const CallExpr& call) {
  const auto it = families().find(call.name);
  if (it == families().end()) throw ParseError("unknown distribution '" + call.name + "'", 0);
  std::vector<std::string> seen;
  for (const auto& a : call.args) {
    const auto& req = it->second.required;
    const bool known = a.key == "loc" || a.key == "scale" || std::find(req.begin(), req.end(), a.key) != req.end();
    if (!known) throw ParseError("unknown parameter '" + a.key + "' for " + call.name, a.pos);
    if (std::find(seen.begin(), seen.end(), a.key) != seen.end())
      throw ParseError("duplicate parameter '" + a.key + "'", a.pos);
    seen.push_back(a.key);
  }
  for (const auto& key : it->second.required)
    if (std::find(seen.begin(), seen.end(), key) == seen.end())
      throw ParseError("missing parameter '" + key + "' for " + call.name, 0);
  return it->second;
}

std::vector<double> expand_values(const std::string& raw, std::size_t pos) {
  std::vector<double> out;
  if (raw.find('|') != std::string::npos) {
    std::size_t start = 0;
    while (true) {
      const std::size_t bar = raw.find('|', start);
      const std::string piece = raw.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
      out.push_back(parse_number(piece, pos + start));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    return out;
  }
  if (raw.find(':') == std::string::npos) return {parse_number(raw, pos)};

  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = raw.find(':', start);
    parts.push_back(raw.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  const bool log_spaced = parts.size() == 4 && lower(parts[3]) == "log";
  if (parts.size() != 3 && !log_spaced) throw ParseError("range must be lo:hi:n or lo:hi:n:log", pos);
  const double lo = parse_number(parts[0], pos);
  const double hi = parse_number(parts[1], pos);
  const double nd = parse_number(parts[2], pos);
  if (!(nd >= 1.0) || nd != std::floor(nd) || nd > 1e6) throw ParseError("range count must be a positive integer", pos);
  if (log_spaced && !(lo > 0.0 && hi > 0.0)) throw ParseError("log range needs positive bounds", pos);
  const auto n = static_cast<std::size_t>(nd);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(log_spaced ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo));
  }
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}

double parse_number(std::string_view token, std::size_t pos) {
  std::string s(token);
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw ParseError("expected a number", pos);
  s = s.substr(b, e - b + 1);
  // Decimal literals only: no hex, inf or nan.
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+' || c == 'e' || c == 'E'))
      throw ParseError("invalid number '" + s + "'", pos);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) throw ParseError("invalid number '" + s + "'", pos);
  return v;
}

CallExpr parse_call(std::string_view text) {
  Lexer lx(text);
  CallExpr call;
  call.name = lx.identifier();
  if (lx.accept('(')) {
    if (!lx.accept(')')) {
      do {
        CallExpr::Arg arg;
        arg.key = lx.identifier();
        lx.expect('=');
        std::tie(arg.value, arg.pos) = lx.value();
        call.args.push_back(std::move(arg));
      } while (lx.accept(','));
      lx.expect(')');
    }
  }
  if (!lx.done()) throw ParseError("unexpected trailing input", lx.pos());
  return call;
}

Distribution parse_distribution(std::string_view text) {
  const CallExpr call = parse_call(text);
  check_keys(call);
  std::map<std::string, double> values;
  for (const auto& a : call.args) values[a.key] = parse_number(a.value, a.pos);
  return build(call.name, values, call.args.empty() ? 0 : call.args.front().pos);
}

std::vector<Distribution> parse_distribution_range(std::string_view text) {
  const CallExpr call = parse_call(text);
  check_keys(call);
  std::vector<std::vector<double>> axes;
  for (const auto& a : call.args) axes.push_back(expand_values(a.value, a.pos));

  std::vector<Distribution> out;
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    std::map<std::string, double> values;
    for (std::size_t j = 0; j < axes.size(); ++j) values[call.args[j].key] = axes[j][idx[j]];
    out.push_back(build(call.name, values, 0));
    std::size_t j = axes.size();
    while (j > 0) {
      --j;
      if (++idx[j] < axes[j].size()) break;
      idx[j] = 0;
      if (j == 0) return out;
    }
    if (axes.empty()) return out;
  }
}

}  // namespace kurtord
