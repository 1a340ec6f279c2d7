#include "mfsp/rational.hpp"

#include <cctype>

#include "mfsp/error.hpp"

namespace mfsp {

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty())
    throw Error(ErrorKind::precondition, "cannot parse rational '" + std::string(whole) + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error(ErrorKind::precondition,
                  "cannot parse rational '" + std::string(whole) + "'");
  return mpz_class(std::string(digits), 10);
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorKind::precondition, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw Error(ErrorKind::precondition, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational out;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    out = Rational(parse_integer(s.substr(0, slash), text), parse_integer(s.substr(slash + 1), text));
  } else {
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_part = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
        exp_negative = exp_part.front() == '-';
        exp_part.remove_prefix(1);
      }
      exponent = parse_integer(exp_part, text).get_si();
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
      digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
      exponent -= static_cast<long>(s.size() - dot - 1);
    } else {
      digits = std::string(s);
    }
    mpz_class value = parse_integer(digits, text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    out = exponent < 0 ? Rational(value, scale) : Rational(mpz_class(value * scale));
  }
  return negative ? -out : out;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

}  // namespace mfsp
