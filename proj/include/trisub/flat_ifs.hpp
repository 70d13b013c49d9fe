#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "trisub/errors.hpp"
#include "trisub/flat_maps.hpp"
#include "trisub/rational.hpp"

namespace trisub {

constexpr int kMeanLogGrowthMaxDepth = 8;

/// Mean over all index words of length `depth` of the summed log growth
/// factors along the word, by exhaustive depth-first enumeration.
/// Depth 2 is the two-step mean-log-growth function F with
/// product_R(x) = exp(36 F(x)).
inline double mean_log_growth(double x, int depth) {
  if (!(x >= 0.0 && x <= 0.5)) throw std::invalid_argument("mean_log_growth: x must lie in [0, 1/2]");
  if (depth < 1) throw std::invalid_argument("mean_log_growth: depth must be >= 1");
  if (depth > kMeanLogGrowthMaxDepth)
    throw DepthTooLarge("mean_log_growth: depth > 8 would enumerate more than 6^8 words");
  double total = 0.0;
  // depth-first with running sums; no per-word storage
  struct Frame {
    double x, acc;
    int next;
  };
  std::array<Frame, kMeanLogGrowthMaxDepth + 1> stack;
  stack[0] = {x, 0.0, 1};
  int top = 0;
  while (top >= 0) {
    Frame& f = stack[top];
    if (f.next > 6) {
      --top;
      continue;
    }
    const int i = f.next++;
    const double acc = f.acc + std::log(growth_G(i, f.x));
    if (top == depth - 1) {
      total += acc;
    } else {
      stack[top + 1] = {z_map(i, f.x), acc, 1};
      ++top;
    }
  }
  double words = 1.0;
  for (int k = 0; k < depth; ++k) words *= 6.0;
  return total / words;
}

/// Product over all pairs (i,j) of G(i, z_j(x)) * G(j, x);
/// equals exp(36 * mean_log_growth(x, 2)).
inline double product_R(double x) {
  if (!(x >= 0.0 && x <= 0.5)) throw std::invalid_argument("product_R: x must lie in [0, 1/2]");
  double p = 1.0;
  for (int j = 1; j <= 6; ++j) {
    const double zj = z_map(j, x);
    const double gj = growth_G(j, x);
    for (int i = 1; i <= 6; ++i) p *= growth_G(i, zj) * gj;
  }
  return p;
}

namespace detail {

// One homographic branch y -> (a y + b)/(c y + d) on [lo, hi); the final
// branch of each map closes its right end.
struct MapBranch {
  int map;
  long a, b, c, d;
  Rational lo, hi;
  bool closed_hi;
};

inline const std::array<MapBranch, 8>& map_branches() {
  static const std::array<MapBranch, 8> branches = {{
      {1, 3, 0, 2, 2, Rational(0), Rational(1, 2), true},
      {2, 3, 0, -1, 2, Rational(0), Rational(2, 7), false},
      {2, -4, 2, -1, 2, Rational(2, 7), Rational(1, 2), true},
      {3, 1, 1, -3, 3, Rational(0), Rational(1, 5), false},
      {3, -4, 2, -3, 3, Rational(1, 5), Rational(1, 2), true},
      {4, 1, 1, -2, 4, Rational(0), Rational(1, 2), true},
      {5, -2, 1, -2, 4, Rational(0), Rational(1, 2), true},
      {6, -2, 1, 0, 3, Rational(0), Rational(1, 2), true},
  }};
  return branches;
}

}  // namespace detail

/// Number of pairs (i, y) with z_i(y) = x, by exact branch-wise inversion of
/// the homographies. Rational arithmetic keeps the branch-domain membership
/// test exact at the special points 1/4, 1/3 and 1/2.
inline int preimage_count(const Rational& x) {
  if (x < Rational(0) || x > Rational(1, 2))
    throw std::invalid_argument("preimage_count: x must lie in [0, 1/2]");
  int count = 0;
  for (const auto& br : detail::map_branches()) {
    // (a y + b)/(c y + d) = x  =>  y (a - x c) = x d - b
    const Rational denom = Rational(br.a) - x * Rational(br.c);
    if (denom.is_zero()) continue;
    const Rational y = (x * Rational(br.d) - Rational(br.b)) / denom;
    const bool in_lo = y >= br.lo;
    const bool in_hi = br.closed_hi ? y <= br.hi : y < br.hi;
    if (in_lo && in_hi) ++count;
  }
  return count;
}

/// Convenience overload; the double is converted exactly, so only binary
/// representables (e.g. 1/4, 1/2) hit the special preimage counts.
inline int preimage_count(double x) { return preimage_count(Rational::from_double(x)); }

}  // namespace trisub
