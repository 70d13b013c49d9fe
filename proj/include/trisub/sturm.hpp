#pragma once

#include <optional>
#include <vector>

#include "trisub/errors.hpp"
#include "trisub/polynomial.hpp"

namespace trisub {

// Sturm sequences over primitive integer polynomials. Remainders are taken
// as signed pseudo-remainders with the multiplier forced positive, then
// reduced to primitive part, which contains coefficient growth without
// touching the sign pattern. Square-free preprocessing makes root counts
// counts of distinct roots. With zero signs skipped in the variation count,
// variations(a) - variations(b) is the number of distinct real roots in the
// half-open interval (a, b].

namespace detail {

// r with s * f = q * g + r, deg r < deg g, s a positive constant.
inline IntPoly positive_prem(const IntPoly& f, const IntPoly& g) {
  std::vector<BigInt> rem = f.coeffs();
  const int dg = g.degree();
  const BigInt& lg = g.leading();
  bool flipped = false;  // parity of applied lg multipliers, when lg < 0
  while (static_cast<int>(rem.size()) - 1 >= dg && !rem.empty()) {
    const BigInt lead = rem.back();
    const std::size_t shift = rem.size() - 1 - dg;
    // rem <- lg * rem - lead * x^shift * g
    for (auto& v : rem) v *= lg;
    if (lg < 0) flipped = !flipped;
    for (int k = 0; k <= dg; ++k) rem[shift + k] -= lead * g.coeffs()[std::size_t(k)];
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
  }
  IntPoly r{std::move(rem)};
  if (flipped) r.negate();
  r.make_primitive();
  return r;
}

}  // namespace detail

/// GCD of two integer polynomials (primitive part, positive leading sign).
inline IntPoly poly_gcd(IntPoly a, IntPoly b) {
  while (!b.is_zero()) {
    IntPoly r = detail::positive_prem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero() && a.leading() < 0) a.negate();
  return a;
}

/// p with repeated roots stripped: p / gcd(p, p').
inline IntPoly square_free_part(const IntPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("square_free_part: zero polynomial");
  if (p.degree() == 0) return p;
  const IntPoly g = poly_gcd(p, p.derivative());
  if (g.degree() == 0) return p;
  auto [q, r] = p.to_rational().divmod(g.to_rational());
  // Gauss: the quotient of primitive polynomials is exact here.
  if (!r.is_zero()) throw std::logic_error("square_free_part: inexact division");
  return IntPoly::from_rational(q);
}

class SturmChain {
 public:
  explicit SturmChain(const IntPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("SturmChain: zero polynomial");
    chain_.push_back(square_free_part(p));
    if (chain_[0].degree() >= 1) {
      chain_.push_back(chain_[0].derivative());
      while (chain_.back().degree() >= 1) {
        IntPoly r = detail::positive_prem(chain_[chain_.size() - 2], chain_.back());
        if (r.is_zero()) break;
        r.negate();
        chain_.push_back(std::move(r));
      }
    }
  }

  int variations_at(const Rational& x) const {
    int count = 0, prev = 0;
    for (const auto& q : chain_) {
      const int s = q.sign_at(x);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  }

  /// Distinct real roots of the original polynomial in (a, b].
  long count_roots(const Rational& a, const Rational& b) const {
    if (!(a < b)) throw std::invalid_argument("count_roots: need a < b");
    return variations_at(a) - variations_at(b);
  }

  const IntPoly& square_free() const { return chain_.front(); }

 private:
  std::vector<IntPoly> chain_;
};

inline long sturm_count_roots(const IntPoly& p, const Rational& a, const Rational& b) {
  return SturmChain(p).count_roots(a, b);
}

inline long sturm_count_roots(const RationalPoly& p, const Rational& a, const Rational& b) {
  return sturm_count_roots(IntPoly::from_rational(p), a, b);
}

/// 1 + max |a_i| / |a_n|: every real root lies in (-bound, bound).
inline Rational cauchy_root_bound(const IntPoly& p) {
  Rational best(0);
  const Rational lead(abs(p.leading()), BigInt(1));
  for (std::size_t k = 0; k + 1 < p.coeffs().size(); ++k) {
    Rational v = Rational(abs(p.coeffs()[k]), BigInt(1)) / lead;
    if (v > best) best = v;
  }
  return best + Rational(1);
}

struct RootBracket {
  Rational lo, hi;
  double midpoint() const { return 0.5 * (lo.to_double() + hi.to_double()); }
};

namespace detail {

// Shrink a bracket that contains exactly one root of the square-free part
// down to the requested width, by sign bisection.
inline RootBracket refine_by_sign(const IntPoly& sf, Rational lo, Rational hi, const Rational& width) {
  int slo = sf.sign_at(lo);
  const Rational half(1, 2);
  while (hi - lo > width) {
    const Rational mid = (lo + hi) * half;
    const int sm = sf.sign_at(mid);
    if (sm == 0) return {mid, mid};
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace detail

/// Largest root strictly below `limit`, refined to the given width, or
/// nullopt if there is none. `limit` itself must not be a root.
inline std::optional<RootBracket> nearest_root_below(const SturmChain& chain, const Rational& limit,
                                                     const Rational& width = Rational(1, 10000000)) {
  Rational lo = -cauchy_root_bound(chain.square_free());
  if (lo >= limit || chain.count_roots(lo, limit) == 0) return std::nullopt;
  Rational hi = limit;
  const Rational half(1, 2);
  // count bisection until the bracket (lo, hi] holds only the largest root
  while (hi - lo > width &&
         (chain.count_roots(lo, hi) > 1 || chain.square_free().sign_at(lo) == 0)) {
    const Rational mid = (lo + hi) * half;
    if (chain.count_roots(mid, hi) >= 1) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return detail::refine_by_sign(chain.square_free(), lo, hi, width);
}

/// Smallest root strictly above `limit`, refined to the given width, or
/// nullopt if there is none. `limit` itself must not be a root.
inline std::optional<RootBracket> nearest_root_above(const SturmChain& chain, const Rational& limit,
                                                     const Rational& width = Rational(1, 10000000)) {
  Rational hi = cauchy_root_bound(chain.square_free());
  if (hi <= limit || chain.count_roots(limit, hi) == 0) return std::nullopt;
  Rational lo = limit;
  const Rational half(1, 2);
  while (hi - lo > width &&
         (chain.count_roots(lo, hi) > 1 || chain.square_free().sign_at(lo) == 0)) {
    const Rational mid = (lo + hi) * half;
    if (chain.count_roots(lo, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return detail::refine_by_sign(chain.square_free(), lo, hi, width);
}

}  // namespace trisub
