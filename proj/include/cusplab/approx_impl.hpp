#pragma once

#include <algorithm>
#include <cmath>

#include "cusplab/error.hpp"

namespace cusplab {

template <class F>
double bisect_inverse(const F& f, double y, double lo, double hi, bool increasing, double lo_limit,
                      double hi_limit) {
  auto below = [&](double x) { return increasing ? f(x) < y : f(x) > y; };
  for (int k = 0; below(hi); ++k) {
    if (hi >= hi_limit || k > 200) throw DomainError("inverse: value above the working range");
    double width = hi - lo;
    lo = hi;
    hi = std::min(hi + 2 * width, hi_limit);
  }
  for (int k = 0; !below(lo); ++k) {
    if (f(lo) == y) return lo;
    if (lo <= lo_limit || k > 200) throw DomainError("inverse: value below the working range");
    double width = hi - lo;
    hi = lo;
    lo = std::max(lo - 2 * width, lo_limit);
  }
  for (int k = 0; k < 400; ++k) {
    double mid = lo + (hi - lo) / 2;
    if (below(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-12 * std::max(std::abs(lo), std::abs(hi)) || hi - lo < 1e-300) break;
  }
  return lo + (hi - lo) / 2;
}

}  // namespace cusplab
