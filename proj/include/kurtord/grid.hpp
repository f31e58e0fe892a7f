#pragma once

#include "kurtord/distributions.hpp"

#include <cstddef>
#include <vector>

namespace kurtord {

struct GridOptions {
  std::size_t points = 2001;   // uniform core on [eps_p, 1 - eps_p]
  double eps_p = 1e-6;
  std::size_t tail_levels = 64;  // per side, beyond the core
  double tail_log_mass = -5000.0;  // deepest log tail mass probed
};

struct GridPoint {
  TailLevel level;
  bool core;  // part of the uniform core
};

/// Probability levels sorted by increasing p, without duplicates.
///
/// Tail levels are geometric in |log mass| between -log(eps_p) and
/// -tail_log_mass; they are dropped silently by callers when a quantile
/// is not representable.
std::vector<GridPoint> probability_levels(const GridOptions& opts);

}  // namespace kurtord
