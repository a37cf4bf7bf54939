#pragma once

#include <string>
#include <vector>

#include "posop/domain.hpp"
#include "posop/measure.hpp"
#include "posop/operator.hpp"

namespace posop {

/// T(mu) with int p dT(mu) = int op(p) dmu. Diff nodes other than D^0 have
/// no constructive adjoint and raise UnsupportedError.
Measure adjoint_apply(const Operator& op, const Measure& mu);

/// The adjoint image of the Dirac measure at x: op(p)(x) = int p dmu_x.
Measure mu_x(const Operator& op, std::span<const Rational> x);

/// mu_x(A).
Rational star_A(const Operator& op, const Cell& a, std::span<const Rational> x);

/// s = sum r_i 1_{A_i} with pairwise disjoint cells.
struct StepFunction {
  std::vector<std::pair<Cell, Rational>> pieces;

  Rational operator()(std::span<const Rational> x) const;
  bool disjoint() const;
};

/// Uniform step approximation of a univariate p on [lo, hi]: `cells`
/// half-open cells [l, r), the last one closed, each at the value of p at
/// its midpoint.
StepFunction step_approximation(const Polynomial& p, const Interval& interval, std::size_t cells);

/// sum r_i mu_x(A_i).
Rational step_integral(const Operator& op, const StepFunction& s, std::span<const Rational> x);

struct FiniteRange {
  enum class Kind { finite_rank, rank_stabilized, not_detected };

  Kind kind = Kind::not_detected;
  /// For finite_rank: linearly independent f_i and measures nu_i with
  /// op(p) = sum f_i int p dnu_i.
  std::vector<Operator::RankTerm> basis;
  /// Rank of span{op(X^beta) : |beta| <= k}, k = 0..d (monomial probe only).
  std::vector<std::size_t> ranks;
  std::string reason;
};

FiniteRange finite_range_detect(const Operator& op, unsigned d);

/// op*_A as the polynomial sum nu_i(A) f_i for a finite-rank basis.
Polynomial star_A_polynomial(const FiniteRange& fr, const Cell& a);

/// Two finite-rank operators are equal as operators: in a common basis of
/// their ranges the functionals agree as measures. nullopt when either side
/// is not finite rank or a measure comparison is out of reach.
std::optional<bool> finite_rank_equal(const Operator& a, const Operator& b);

/// op_a(p) == op_b(p) for every monomial of degree <= d.
bool equal_on_degree(const Operator& a, const Operator& b, unsigned d);

}  // namespace posop
