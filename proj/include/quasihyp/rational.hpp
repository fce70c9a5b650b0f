#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "quasihyp/errors.hpp"

namespace quasihyp {

using Integer = mpz_class;
using Rational = mpq_class;
using Vector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q" (no decimals, no whitespace inside). Throws MalformedInput.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw MalformedInput("empty rational literal");
  std::string s(text);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid_int(s, true)) throw MalformedInput("not a rational literal: '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    return Rational(Integer(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw MalformedInput("not a rational literal: '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw MalformedInput("zero denominator in '" + s + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

/// "p/q" in lowest terms, integers rendered without a denominator.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// p/q in lowest terms; q must be nonzero.
inline Rational ratio(const Integer& p, const Integer& q) {
  if (q == 0) throw DomainError("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

/// Best rational approximation of x with denominator <= max_den (continued-fraction convergents
/// plus the best semiconvergent).
inline Rational best_approximation(const Rational& x, const Integer& max_den) {
  if (max_den < 1) throw DomainError("denominator cap must be positive");
  if (x.get_den() <= max_den) return x;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer num = x.get_num(), den = x.get_den();
  while (true) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Integer q2 = q0 + a * q1;
    if (q2 > max_den) {
      Integer k = (max_den - q0) / q1;
      Rational semi(p0 + k * p1, q0 + k * q1);
      Rational conv(p1, q1);
      semi.canonicalize();
      conv.canonicalize();
      return abs(Rational(semi - x)) < abs(Rational(conv - x)) ? semi : conv;
    }
    Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Integer rem = num - a * den;
    if (rem == 0) break;
    num = den;
    den = rem;
  }
  Rational r(p1, q1);
  r.canonicalize();
  return r;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline Integer factorial(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace quasihyp
