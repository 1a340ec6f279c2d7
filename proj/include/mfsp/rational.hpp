#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "mfsp/arith.hpp"

namespace mfsp {

/// Exact rational, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT: integers convert implicitly
  Rational(const Natural& n) : q_(n) {}  // NOLINT
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts "p/q", "-p/q", integers and finite decimals such as "2.1" or
  /// "1e9"; decimals convert exactly (2.1 -> 21/10).
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }
  double to_double() const { return q_.get_d(); }
  /// "p/q", or just "p" when the denominator is 1.
  std::string to_string() const { return q_.get_str(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);

}  // namespace mfsp
