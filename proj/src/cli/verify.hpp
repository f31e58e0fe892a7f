#pragma once

#include "kurtord/orders.hpp"

#include <string>
#include <vector>

namespace kurtord::cli {

struct VerifyItem {
  std::string name;
  bool pass;
  std::string detail;
};

/// Reproduces the reference results: counterexamples to transitivity, the
/// monomial and Weibull classifications, the sinh-arsinh grid and table,
/// and the closed-form special cases of R''.
std::vector<VerifyItem> run_verify(const CheckOptions& opts);

}  // namespace kurtord::cli
