#pragma once

#include <array>
#include <stdexcept>

#include "trisub/polynomial.hpp"

namespace trisub {

/// The three branch regimes of the maps on [0,1/2]: map 2 switches at 2/7
/// and map 3 at 1/5, so the two-step growth product is polynomial on each of
/// [0,1/5], [1/5,2/7] and [2/7,1/2].
enum class IntervalId { Low, Mid, High };

inline Rational interval_left(IntervalId id) {
  switch (id) {
    case IntervalId::Low: return Rational(0);
    case IntervalId::Mid: return Rational(1, 5);
    case IntervalId::High: return Rational(2, 7);
  }
  throw std::invalid_argument("interval_left");
}

inline Rational interval_right(IntervalId id) {
  switch (id) {
    case IntervalId::Low: return Rational(1, 5);
    case IntervalId::Mid: return Rational(2, 7);
    case IntervalId::High: return Rational(1, 2);
  }
  throw std::invalid_argument("interval_right");
}

inline const char* interval_name(IntervalId id) {
  switch (id) {
    case IntervalId::Low: return "low";
    case IntervalId::Mid: return "mid";
    case IntervalId::High: return "high";
  }
  return "?";
}

struct Homography {
  RationalPoly num, den;
};

/// The branch of map j active on the given interval, as an exact rational
/// function.
inline Homography z_branch(int j, IntervalId id) {
  switch (j) {
    case 1: return {RationalPoly::affine(0, 3), RationalPoly::affine(2, 2)};
    case 2:
      return id == IntervalId::High
                 ? Homography{RationalPoly::affine(2, -4), RationalPoly::affine(2, -1)}
                 : Homography{RationalPoly::affine(0, 3), RationalPoly::affine(2, -1)};
    case 3:
      return id == IntervalId::Low
                 ? Homography{RationalPoly::affine(1, 1), RationalPoly::affine(3, -3)}
                 : Homography{RationalPoly::affine(2, -4), RationalPoly::affine(3, -3)};
    case 4: return {RationalPoly::affine(1, 1), RationalPoly::affine(4, -2)};
    case 5: return {RationalPoly::affine(1, -2), RationalPoly::affine(4, -2)};
    case 6: return {RationalPoly::affine(1, -2), RationalPoly::affine(3, 0)};
    default: throw std::invalid_argument("z_branch: index must be in 1..6");
  }
}

/// sqrt(6) * G(i, x) as a polynomial: the scaling clears the square roots.
inline RationalPoly scaled_growth(int i) {
  switch (i) {
    case 1: return RationalPoly::affine(2, 2);
    case 2: return RationalPoly::affine(2, -1);
    case 3: return RationalPoly::affine(3, -3);
    case 4: return RationalPoly::affine(4, -2);
    case 5: return RationalPoly::affine(4, -2);
    case 6: return RationalPoly::affine(3, 0);
    default: throw std::invalid_argument("scaled_growth: index must be in 1..6");
  }
}

using GrowthMatrix = std::array<std::array<RationalPoly, 6>, 6>;

/// Entry (i,j) is sqrt(6)G(i, z_j(x)) * sqrt(6)G(j, x), composed symbolically
/// with the interval's active branch of z_j and cleared of denominators.
/// Every entry comes out as a polynomial of degree at most one.
inline GrowthMatrix build_growth_matrix(IntervalId id) {
  GrowthMatrix m;
  for (int j = 1; j <= 6; ++j) {
    const Homography zj = z_branch(j, id);
    const RationalPoly gj = scaled_growth(j);
    for (int i = 1; i <= 6; ++i) {
      const RationalPoly gi = scaled_growth(i);
      // g_i(z_j(x)) = (c0 * den + c1 * num) / den
      const RationalPoly comp_num = RationalPoly::constant(gi.coeff(0)) * zj.den +
                                    RationalPoly::constant(gi.coeff(1)) * zj.num;
      auto [q, r] = (comp_num * gj).divmod(zj.den);
      if (!r.is_zero()) throw std::logic_error("build_growth_matrix: denominator did not clear");
      m[std::size_t(i - 1)][std::size_t(j - 1)] = q;
    }
  }
  return m;
}

/// The exact polynomial R(x) - 1 on the given interval: the product of all
/// 36 matrix entries divided by 6^36, minus one. Degree 34 (two entries of
/// each matrix are the constant 9).
inline RationalPoly expand_R_minus_one(IntervalId id) {
  const GrowthMatrix m = build_growth_matrix(id);
  RationalPoly prod = RationalPoly::constant(Rational(1));
  for (const auto& row : m)
    for (const auto& entry : row) prod = prod * entry;
  BigInt scale(1);
  for (int k = 0; k < 36; ++k) scale *= 6;
  prod.scale(Rational(BigInt(1), scale));
  return prod - RationalPoly::constant(Rational(1));
}

/// Exact R(x) on the interval's polynomial piece.
inline Rational exact_R(IntervalId id, const Rational& x) {
  return expand_R_minus_one(id).eval(x) + Rational(1);
}

}  // namespace trisub
