#pragma once

#include <cmath>
#include <cstddef>

namespace lexopt::detail {

// Golden-section search for a minimizer of f on [lo, hi]. Tracks the best
// evaluated abscissa so a non-unimodal f still yields a point no worse than
// anything probed. Endpoints are the caller's business.
template <class F>
double golden_section_min(F&& f, double lo, double hi, double tol,
                          std::size_t max_iters = 200) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  double best_x = f1 <= f2 ? x1 : x2;
  double best_f = f1 <= f2 ? f1 : f2;
  for (std::size_t it = 0; it < max_iters && b - a > tol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
      if (f1 < best_f) {
        best_f = f1;
        best_x = x1;
      }
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
      if (f2 < best_f) {
        best_f = f2;
        best_x = x2;
      }
    }
  }
  return best_x;
}

}  // namespace lexopt::detail
