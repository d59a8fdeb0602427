#ifndef BELLSCAN_RATIONAL_HPP
#define BELLSCAN_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace bellscan {

using BigInt = mpz_class;

/// Exact rational number. Always stored reduced with a positive denominator,
/// so equality and ordering are the mathematical ones. All constraint-side
/// geometry (lines, envelope vertices, thresholds) runs on this type; doubles
/// appear only at output boundaries.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long v) : q_(v) {}        // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}         // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& q);

  /// Accepts "7", "-3/4" and decimal literals like "0.85" (parsed exactly).
  static Rational parse(std::string_view text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  double to_double() const { return q_.get_d(); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_negative() const { return sgn(q_) < 0; }
  bool is_positive() const { return sgn(q_) > 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational reciprocal() const;

  /// "num/den", or just "num" when the value is an integer.
  std::string str() const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) != 0; }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class q_;
};

/// base^exp for small non-negative exponents.
BigInt bigint_pow(const BigInt& base, unsigned exp);

}  // namespace bellscan

#endif  // BELLSCAN_RATIONAL_HPP
