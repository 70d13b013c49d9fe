#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace trisub {

using BigInt = mpz_class;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Thin value wrapper over GMP's mpq_t.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design
  Rational(long n, long d) : v_(n, d) { canonical(); }
  Rational(const BigInt& n, const BigInt& d) : v_(n, d) { canonical(); }
  explicit Rational(const mpq_class& q) : v_(q) { canonical(); }

  /// Exact value of an IEEE double (finite input only).
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("Rational::from_double: non-finite");
    Rational r;
    mpq_set_d(r.v_.get_mpq_t(), x);
    return r;
  }

  /// Parse "p/q" or a plain decimal like "-0.125".
  static Rational parse(const std::string& text) {
    const auto decimal = [](const std::string& s) { return BigInt(s, 10); };
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      BigInt n = decimal(text.substr(0, slash));
      BigInt d = decimal(text.substr(slash + 1));
      if (d == 0) throw std::invalid_argument("Rational::parse: zero denominator");
      return Rational(n, d);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(decimal(text), BigInt(1));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const auto frac_len = text.size() - dot - 1;
    BigInt den(1);
    for (std::size_t k = 0; k < frac_len; ++k) den *= 10;
    return Rational(decimal(digits), den);
  }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  double to_double() const { return v_.get_d(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }

  std::string str() const {
    std::string s = num().get_str();
    if (den() != 1) s += "/" + den().get_str();
    return s;
  }

  Rational operator-() const { return Rational(mpq_class(-v_), NoCanon{}); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend Rational abs(const Rational& a) { return Rational(mpq_class(abs(a.v_)), NoCanon{}); }

 private:
  struct NoCanon {};
  Rational(mpq_class q, NoCanon) : v_(std::move(q)) {}
  void canonical() { v_.canonicalize(); }

  mpq_class v_;
};

}  // namespace trisub
