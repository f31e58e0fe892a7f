#pragma once

#include "kurtord/orders.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace kurtord::cli {

inline constexpr int kSchemaVersion = 1;

std::string fmt(double v);
std::string fmt_seed(std::uint64_t seed);

/// Minimal RFC 4180 quoting.
std::string csv_field(const std::string& s);

nlohmann::json to_json(const CheckOptions& opts);
nlohmann::json to_json(const OrderVerdict& v);
nlohmann::json to_json(const InflectionReport& r);

struct PairRecord {
  std::string f;
  std::string g;
  OrderVerdict verdict;
  InflectionReport inflection;
};

std::string csv_header();
std::string csv_row(const PairRecord& r);

std::string text_verdict(const OrderVerdict& v);
std::string text_options(const CheckOptions& opts);

}  // namespace kurtord::cli
