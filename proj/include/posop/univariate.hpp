#pragma once

#include <optional>
#include <span>
#include <vector>

#include "posop/polynomial.hpp"
#include "posop/rational.hpp"

namespace posop::univariate {

/// Dense univariate polynomial, coefficient k multiplies x^k. Trailing zeros
/// are trimmed so degree() is exact; the zero polynomial has degree -1.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coefficients);
  explicit UPoly(const Polynomial& p);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }
  Rational operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const { return sgn((*this)(x)); }

  UPoly derivative() const;
  UPoly monic() const;
  Polynomial to_polynomial() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const Rational& c);
  UPoly operator-() const;
  bool operator==(const UPoly&) const = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct DivMod {
  UPoly quotient;
  UPoly remainder;
};

DivMod divmod(const UPoly& a, const UPoly& b);
UPoly gcd(UPoly a, UPoly b);
/// p / gcd(p, p'): same real roots, all simple.
UPoly square_free_part(const UPoly& p);

/// Bound B with every real root strictly inside (-B, B).
Rational cauchy_bound(const UPoly& p);

/// Sturm chain of a square-free polynomial.
class SturmChain {
 public:
  explicit SturmChain(const UPoly& square_free);
  int sign_changes(const Rational& x) const;
  /// Distinct roots in the half-open interval (lo, hi].
  int count_roots(const Rational& lo, const Rational& hi) const;

 private:
  std::vector<UPoly> chain_;
};

/// One isolated real root: either known exactly (lo == hi, exact == true),
/// or the only root of the open interval (lo, hi) whose endpoints are not
/// roots.
struct RootCell {
  Rational lo;
  Rational hi;
  bool exact = false;
};

/// Isolates the distinct real roots of p in the closed interval [lo, hi],
/// sorted increasingly. p must be nonzero.
std::vector<RootCell> isolate_roots(const UPoly& p, const Rational& lo, const Rational& hi);

/// Shrinks an open isolating cell of square-free q until its width is at
/// most `width`, keeping endpoints non-roots. Exact cells are returned as is.
RootCell refine(const UPoly& square_free, RootCell cell, const Rational& width);

/// If the unique root of square-free q in the open cell is rational, returns it.
std::optional<Rational> rational_root_in(const UPoly& square_free, const RootCell& cell);

/// Rational roots of p in [lo, hi] that can be confirmed exactly, plus a
/// flag telling whether every root there is rational.
struct RootSet {
  std::vector<Rational> rational;
  bool all_rational = true;
};
RootSet rational_roots(const UPoly& p, const Rational& lo, const Rational& hi);

/// Enclosure [min b_k, max b_k] of p over [lo, hi] from its Bernstein
/// coefficients of degree deg(p).
std::pair<Rational, Rational> bernstein_range(const UPoly& p, const Rational& lo, const Rational& hi);

}  // namespace posop::univariate
