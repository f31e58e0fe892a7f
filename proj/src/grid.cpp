#include "kurtord/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kurtord {

std::vector<GridPoint> probability_levels(const GridOptions& opts) {
  if (opts.points == 0) throw std::invalid_argument("grid needs at least one point");
  if (!(opts.eps_p > 0.0 && opts.eps_p < 0.5)) throw std::invalid_argument("eps_p must lie in (0, 0.5)");

  std::vector<GridPoint> out;
  out.reserve(opts.points + 2 * opts.tail_levels);
  if (opts.points == 1) {
    out.push_back({TailLevel::from_p(0.5), true});
  } else {
    const double span = 1.0 - 2.0 * opts.eps_p;
    for (std::size_t i = 0; i < opts.points; ++i) {
      const double p = opts.eps_p + span * static_cast<double>(i) / static_cast<double>(opts.points - 1);
      out.push_back({TailLevel::from_p(p), true});
    }
  }

  const double inner = -std::log(opts.eps_p);
  const double outer = -opts.tail_log_mass;
  if (opts.tail_levels > 0 && outer > inner) {
    const double ratio = std::log(outer / inner);
    for (std::size_t j = 1; j <= opts.tail_levels; ++j) {
      const double depth = inner * std::exp(ratio * static_cast<double>(j) / static_cast<double>(opts.tail_levels));
      out.push_back({{Tail::lower, -depth}, false});
      out.push_back({{Tail::upper, -depth}, false});
    }
  }

  std::sort(out.begin(), out.end(), [](const GridPoint& a, const GridPoint& b) { return a.level < b.level; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const GridPoint& a, const GridPoint& b) {
                          return a.level.side == b.level.side && a.level.log_mass == b.level.log_mass;
                        }),
            out.end());
  return out;
}

}  // namespace kurtord
