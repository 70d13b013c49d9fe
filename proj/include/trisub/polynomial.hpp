#pragma once

#include <string>
#include <utility>
#include <vector>

#include "trisub/errors.hpp"
#include "trisub/rational.hpp"

namespace trisub {

/// Dense univariate polynomial over Rational, lowest degree first.
/// The coefficient list never ends in a zero (the zero polynomial is empty).
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static RationalPoly constant(Rational v) { return RationalPoly({std::move(v)}); }
  /// c0 + c1 x from longs, the common case for the growth matrices.
  static RationalPoly affine(long c0, long c1) { return RationalPoly({Rational(c0), Rational(c1)}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  double eval_double(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
    return acc;
  }

  RationalPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = Rational(long(k)) * c_[k];
    return RationalPoly(std::move(d));
  }

  RationalPoly& operator+=(const RationalPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  RationalPoly& operator-=(const RationalPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }

  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> p(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) p[i + j] += a.c_[i] * b.c_[j];
    return RationalPoly(std::move(p));
  }

  RationalPoly& scale(const Rational& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  /// Quotient and remainder of exact division by a nonzero polynomial.
  std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& d) const {
    if (d.is_zero()) throw ZeroPolynomial("RationalPoly::divmod: zero divisor");
    std::vector<Rational> rem = c_;
    std::vector<Rational> quo;
    const int dd = d.degree();
    while (static_cast<int>(rem.size()) - 1 >= dd && !rem.empty()) {
      const Rational factor = rem.back() / d.leading();
      const std::size_t shift = rem.size() - 1 - dd;
      if (quo.size() < shift + 1) quo.resize(shift + 1, Rational(0));
      quo[shift] = factor;
      for (int k = 0; k <= dd; ++k) rem[shift + k] -= factor * d.c_[k];
      while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
    }
    return {RationalPoly(std::move(quo)), RationalPoly(std::move(rem))};
  }

  friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const RationalPoly& a, const RationalPoly& b) { return !(a == b); }

  /// "4 + 10x" style rendering, used for matrix fidelity reporting.
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      Rational v = c_[k];
      if (!out.empty()) {
        out += v.sign() < 0 ? " - " : " + ";
        if (v.sign() < 0) v = -v;
      } else if (v.sign() < 0) {
        out += "-";
        v = -v;
      }
      const bool unit = v == Rational(1) && k > 0;
      if (!unit) out += v.str();
      if (k == 1) out += "x";
      if (k > 1) out += "x^" + std::to_string(k);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Primitive integer image of a rational polynomial: content stripped,
/// positive-denominator cleared. Shares signs with the original everywhere.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPoly from_rational(const RationalPoly& p) {
    if (p.is_zero()) return {};
    BigInt lcm(1);
    for (const auto& v : p.coeffs()) lcm = lcm / gcd(lcm, v.den()) * v.den();
    std::vector<BigInt> c(p.coeffs().size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      const auto& v = p.coeffs()[k];
      c[k] = v.num() * (lcm / v.den());
    }
    IntPoly out(std::move(c));
    out.make_primitive();
    return out;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return c_; }
  const BigInt& leading() const { return c_.back(); }

  /// Sign of p(a/b); exact, using p(a/b) * b^deg which shares its sign
  /// for b > 0.
  int sign_at(const Rational& x) const {
    if (is_zero()) return 0;
    const BigInt& a = x.num();
    const BigInt& b = x.den();
    BigInt acc = c_.back();
    BigInt bpow(1);
    for (int k = degree() - 1; k >= 0; --k) {
      bpow *= b;
      acc = acc * a + c_[std::size_t(k)] * bpow;
    }
    return sgn(acc);
  }

  IntPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = BigInt(long(k)) * c_[k];
    IntPoly out(std::move(d));
    out.make_primitive();
    return out;
  }

  void negate() {
    for (auto& v : c_) v = -v;
  }

  void make_primitive() {
    if (c_.empty()) return;
    BigInt g(0);
    for (const auto& v : c_) g = gcd(g, v);
    if (g > 1)
      for (auto& v : c_) v /= g;
  }

  RationalPoly to_rational() const {
    std::vector<Rational> c(c_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = Rational(c_[k], BigInt(1));
    return RationalPoly(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<BigInt> c_;
};

}  // namespace trisub
