#pragma once

#include "kurtord/distributions.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kurtord {

/// Syntax or value error; position() is a 0-based offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos);
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

/// `name(key=value, ...)` or a bare `name`. Names and keys are lower-cased.
struct CallExpr {
  struct Arg {
    std::string key;
    std::string value;
    std::size_t pos;  // offset of the value
  };
  std::string name;
  std::vector<Arg> args;
};

CallExpr parse_call(std::string_view text);

/// Parses a decimal literal that spans the whole token.
double parse_number(std::string_view token, std::size_t pos);

/// `power(p=3)`, `refcube(c=1)`, `weibull(k=1.5)`, `sas(nu=0.5,tau=2)`,
/// `normal()`; every family also accepts `loc` and `scale`.
Distribution parse_distribution(std::string_view text);

/// Like parse_distribution, but each value may be a list `a|b|c` or a
/// range `lo:hi:n` / `lo:hi:n:log`. Returns the Cartesian product with the
/// last key varying fastest.
std::vector<Distribution> parse_distribution_range(std::string_view text);

}  // namespace kurtord
