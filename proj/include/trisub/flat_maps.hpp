#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trisub {

// The six maps driving the flat-triangle chain on [0,1/2], their derivative
// magnitudes D(i,x) = |z_i'|(x), and the growth factors G(i,x) with
// D = 1/G^2. Maps 2 and 3 are piecewise, breaking at 2/7 and 1/5; branch
// selection uses x < breakpoint for the first formula (the maps are
// continuous across the breakpoints, so the convention is unobservable).

/// A flat shape is its shortest/longest edge ratio, a value in [0, 1/2].
using FlatPoint = double;

inline void check_map_index(int i) {
  if (i < 1 || i > 6) throw std::invalid_argument("map index must be in 1..6");
}

inline double z_map(int i, double x) {
  double v = 0.0;
  switch (i) {
    case 1: v = 3.0 * x / (2.0 + 2.0 * x); break;
    case 2: v = x < 2.0 / 7.0 ? 3.0 * x / (2.0 - x) : (2.0 - 4.0 * x) / (2.0 - x); break;
    case 3: v = x < 1.0 / 5.0 ? (1.0 + x) / (3.0 - 3.0 * x) : (2.0 - 4.0 * x) / (3.0 - 3.0 * x); break;
    case 4: v = (1.0 + x) / (4.0 - 2.0 * x); break;
    case 5: v = (1.0 - 2.0 * x) / (4.0 - 2.0 * x); break;
    case 6: v = (1.0 - 2.0 * x) / 3.0; break;
    default: check_map_index(i);
  }
  // the image is [0,1/2] exactly; clamp rounding overshoot
  return std::clamp(v, 0.0, 0.5);
}

/// |z_i'|(x); at the breakpoints the one-sided values agree in magnitude.
inline double z_derivative_abs(int i, double x) {
  switch (i) {
    case 1: return 1.5 / ((1.0 + x) * (1.0 + x));
    case 2: return 6.0 / ((2.0 - x) * (2.0 - x));
    case 3: return (2.0 / 3.0) / ((1.0 - x) * (1.0 - x));
    case 4: return 1.5 / ((2.0 - x) * (2.0 - x));
    case 5: return 1.5 / ((2.0 - x) * (2.0 - x));
    case 6: return 2.0 / 3.0;
    default: check_map_index(i); return 0.0;
  }
}

/// Growth factor G(i,x): sqrt(6) times the perimeter ratio of child i of the
/// flat triangle with shape x. Satisfies z_derivative_abs = 1/G^2.
inline double growth_G(int i, double x) {
  switch (i) {
    case 1: return std::sqrt(2.0 / 3.0) * (1.0 + x);
    case 2: return std::sqrt(1.0 / 6.0) * (2.0 - x);
    case 3: return std::sqrt(1.5) * (1.0 - x);
    case 4: return std::sqrt(2.0 / 3.0) * (2.0 - x);
    case 5: return std::sqrt(2.0 / 3.0) * (2.0 - x);
    case 6: return std::sqrt(1.5);
    default: check_map_index(i); return 0.0;
  }
}

}  // namespace trisub
