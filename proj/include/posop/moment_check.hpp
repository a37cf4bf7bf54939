#pragma once

#include <string>
#include <vector>

#include "posop/domain.hpp"
#include "posop/measure.hpp"

namespace posop {

/// Dense symmetric matrix over Q.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t size = 0) : n_(size), a_(size * size, Rational(0)) {}

  std::size_t size() const { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  /// Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, const Rational& v);

  /// v^T M v.
  Rational quadratic_form(std::span<const Rational> v) const;

  bool operator==(const SymMatrix&) const = default;

 private:
  std::size_t n_;
  std::vector<Rational> a_;
};

std::string to_string(const SymMatrix& m);

/// (r_{i+j})_{i,j=0..m}.
SymMatrix hankel(const MomentSequence& r, unsigned m);

/// (L(g X^{alpha+beta}))_{alpha,beta} with alpha, beta running over the
/// monomials of degree <= m in ascending graded-lex order.
SymMatrix localizing_matrix(const MomentSequence& r, const Polynomial& g, unsigned m);

struct PsdResult {
  bool psd = true;
  /// When not PSD: integer vector v with v^T M v = value < 0.
  std::vector<Rational> certificate;
  Rational value;
  /// Pivots of the symmetric LDL^T in elimination order.
  std::vector<Rational> pivots;
};

/// Exact PSD test by LDL^T with symmetric pivoting.
PsdResult is_psd_exact(const SymMatrix& m);

struct MatrixCheck {
  std::string label;   // "hankel", "moment", "localizer x0 - 2", ...
  unsigned level;      // matrices are indexed by monomials of degree <= level
  SymMatrix matrix;
  PsdResult result;
};

struct MomentVerdict {
  enum class Kind { refuted, consistent };

  Kind kind = Kind::consistent;
  /// Level of the failing matrix, or the level up to which all passed.
  unsigned order = 0;
  std::vector<Rational> certificate;
  Rational value;
  std::string failed_matrix;
  /// True when the tested family is only necessary for being an S-moment
  /// sequence (every multivariate case).
  bool necessary_only = false;
  std::vector<MatrixCheck> checks;

  bool refuted() const { return kind == Kind::refuted; }
};

/// Levels k = 0..m: the (moment) Hankel matrix plus the localizers for S
/// (x - c on [c,inf), (x - a)(b - x) on [a,b], facets x_i - a_i, b_i - x_i on
/// boxes). A localizer of degree e is used at level k while 2k + e does not
/// exceed the order of r. Throws InsufficientOrderError when r.order() < 2m.
MomentVerdict moment_check(const MomentSequence& r, const DomainSet& s, unsigned m);

std::string to_string(const MomentVerdict& v);

}  // namespace posop
