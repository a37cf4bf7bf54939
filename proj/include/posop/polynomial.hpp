#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "posop/rational.hpp"

namespace posop {

/// Exponent vector alpha in N^n. Ordered graded-lexicographically: total
/// degree first, then the exponent of x0, x1, ... (larger is greater).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t nvars) : exps_(nvars, 0) {}
  MultiIndex(std::initializer_list<unsigned> exps) : exps_(exps) {}
  explicit MultiIndex(std::vector<unsigned> exps) : exps_(std::move(exps)) {}

  static MultiIndex unit(std::size_t nvars, std::size_t i);

  std::size_t size() const { return exps_.size(); }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  unsigned& operator[](std::size_t i) { return exps_[i]; }
  std::span<const unsigned> exponents() const { return exps_; }

  unsigned degree() const;
  bool is_zero() const { return degree() == 0; }

  /// alpha <= beta componentwise.
  bool precedes(const MultiIndex& beta) const;

  /// alpha! = prod alpha_i!
  Integer factorial() const;

  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise difference; requires other.precedes(*this).
  MultiIndex operator-(const MultiIndex& other) const;

  bool operator==(const MultiIndex&) const = default;
  std::strong_ordering operator<=>(const MultiIndex& other) const;

  /// Every multi-index with |alpha| <= degree, ascending graded-lex order.
  static std::vector<MultiIndex> up_to_degree(std::size_t nvars, unsigned degree);

 private:
  std::vector<unsigned> exps_;
};

/// Sparse polynomial over Q in a fixed number of variables x0..x{n-1}.
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Rational>;

  explicit Polynomial(std::size_t nvars = 1);

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial monomial(const MultiIndex& alpha, const Rational& c = 1);
  /// Univariate convenience: coefficients[k] multiplies x0^k.
  static Polynomial univariate(std::span<const Rational> coefficients);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// -1 for the zero polynomial.
  int total_degree() const;
  unsigned degree_in(std::size_t var) const;
  Rational coefficient(const MultiIndex& alpha) const;
  /// Value of the constant term (the polynomial need not be constant).
  Rational constant_term() const;

  void add_term(const MultiIndex& alpha, const Rational& c);

  Rational operator()(std::span<const Rational> x) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  bool operator==(const Polynomial& other) const = default;

 private:
  std::size_t nvars_;
  Terms terms_;
};

enum class ArithOp { add, sub, mul };

Polynomial arith(const Polynomial& p, const Polynomial& q, ArithOp op);
Polynomial scale(const Polynomial& p, const Rational& c);
Polynomial power(const Polynomial& p, unsigned k);
Rational eval(const Polynomial& p, std::span<const Rational> x);

/// D^alpha p.
Polynomial derivative(const Polynomial& p, const MultiIndex& alpha);
Polynomial partial(const Polynomial& p, std::size_t var);

/// p(f_1, ..., f_n): substitutes f_i for x_i. All f_i share one ring, which
/// becomes the ring of the result.
Polynomial compose(const Polynomial& p, std::span<const Polynomial> f);

/// p(x + shift).
Polynomial translate(const Polynomial& p, std::span<const Rational> shift);

/// Canonical text, terms in descending graded-lex order, e.g.
/// `3/2*x0^2*x1 - x1 + 1`.
std::string to_string(const Polynomial& p);

/// Parses sums/products/powers of rationals and variables x0..x{n-1}.
/// Division is allowed by rational constants only.
Polynomial parse_polynomial(std::string_view text, std::size_t nvars);

/// Largest variable index mentioned as `x<k>` in the text, plus one
/// (0 when no variable appears).
std::size_t infer_nvars(std::string_view text);

}  // namespace posop
