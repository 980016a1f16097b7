#pragma once

#include <cmath>

namespace softhand::detail {

// Bisection on a bracket with f(lo), f(hi) of opposite sign (or zero).
template <class F>
double bisect(F&& f, double lo, double hi, double width = 1e-12, int max_iter = 400) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  for (int i = 0; i < max_iter && hi - lo > width; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace softhand::detail
