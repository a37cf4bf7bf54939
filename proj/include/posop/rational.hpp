#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace posop {

/// Exact rational scalar. GMP keeps it canonical (reduced, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// A point of R^n with rational coordinates.
using Point = std::vector<Rational>;

Rational make_rational(long num, long den = 1);

/// Parses `3`, `-3/4`, `+12`. Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(std::span<const Rational> point);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
Rational abs(const Rational& q);
Rational pow(const Rational& base, unsigned exponent);
Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);
int sign(const Rational& q);

/// The rational with smallest denominator (then smallest magnitude) in the
/// closed interval [lo, hi]. Requires lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Least k/2^bits with (k/2^bits)^2 >= square. sqrt_lower is the greatest
/// k/2^bits with (k/2^bits)^2 <= square.
Rational sqrt_upper(const Rational& square, unsigned bits);
Rational sqrt_lower(const Rational& square, unsigned bits);

/// Lexicographic comparison of points of equal length.
bool lex_less(std::span<const Rational> a, std::span<const Rational> b);

double to_double(const Rational& q);

}  // namespace posop
