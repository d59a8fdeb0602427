#include "bellscan/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace bellscan {

Rational::Rational(long num, long den) : q_(num, den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  q_.canonicalize();
}

Rational::Rational(const BigInt& num, const BigInt& den) : q_(num, den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw std::invalid_argument("Rational: reciprocal of zero");
  return Rational(denominator(), numerator());
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
  if (s.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational::parse: bad fraction '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("Rational::parse: zero denominator in '" + s + "'");
    return Rational(q);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    mpz_class z;
    if (z.set_str(s, 10) != 0) throw std::invalid_argument("Rational::parse: bad integer '" + s + "'");
    return Rational(z, BigInt(1));
  }
  // Decimal literal: sign, integer part, fractional digits.
  bool neg = false;
  std::size_t start = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = (s[0] == '-');
    start = 1;
  }
  std::string int_part = s.substr(start, dot - start);
  std::string frac_part = s.substr(dot + 1);
  if (int_part.empty() && frac_part.empty())
    throw std::invalid_argument("Rational::parse: bad decimal '" + s + "'");
  for (const std::string* part : {&int_part, &frac_part})
    for (char c : *part)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("Rational::parse: bad decimal '" + s + "'");
  mpz_class num(int_part.empty() ? "0" : int_part);
  for (char c : frac_part) {
    num *= 10;
    num += c - '0';
  }
  BigInt den = bigint_pow(10, static_cast<unsigned>(frac_part.size()));
  if (neg) num = -num;
  return Rational(num, den);
}

std::string Rational::str() const {
  if (is_integer()) return numerator().get_str();
  return numerator().get_str() + "/" + denominator().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

BigInt bigint_pow(const BigInt& base, unsigned exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

}  // namespace bellscan
