#include "posop/rational.hpp"

#include <algorithm>
#include <cctype>

#include "posop/errors.hpp"

namespace posop {

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational '" + std::string(text) + "'", 0);
  }
  Integer d(std::string(den), 10);
  if (d == 0) {
    throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
  }
  Rational q(Integer(std::string(num), 10), d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(std::span<const Rational> point) {
  std::string out = "(";
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) out += ", ";
    out += point[i].get_str();
  }
  return out + ")";
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  out.canonicalize();
  return out;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

int sign(const Rational& q) { return sgn(q); }

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw Error("simplest_between: empty interval");
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_between(-hi, -lo);
  const Integer fl = floor(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // fl < lo <= hi < fl + 1: recurse on the reciprocal of the fractional parts
  const Rational inner = simplest_between(1 / (hi - fl), 1 / (lo - fl));
  Rational out = Rational(fl) + 1 / inner;
  out.canonicalize();
  return out;
}

Rational sqrt_upper(const Rational& square, unsigned bits) {
  if (square < 0) throw Error("sqrt_upper: negative argument");
  const Integer scale = Integer(1) << bits;
  // smallest k with k^2 >= square * scale^2
  const Rational target = square * scale * scale;
  Integer k;
  mpz_sqrt(k.get_mpz_t(), floor(target).get_mpz_t());
  while (Rational(k * k) < target) ++k;
  Rational out(k, scale);
  out.canonicalize();
  return out;
}

Rational sqrt_lower(const Rational& square, unsigned bits) {
  if (square < 0) throw Error("sqrt_lower: negative argument");
  const Integer scale = Integer(1) << bits;
  const Rational target = square * scale * scale;
  Integer k;
  mpz_sqrt(k.get_mpz_t(), floor(target).get_mpz_t());
  Rational out(k, scale);
  out.canonicalize();
  return out;
}

bool lex_less(std::span<const Rational> a, std::span<const Rational> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace posop
