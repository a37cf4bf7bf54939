#pragma once

#include <span>
#include <vector>

#include "posop/domain.hpp"
#include "posop/polynomial.hpp"

namespace posop {

/// Tensor Bernstein coefficients of a polynomial over a box. Coefficient
/// (k_0, ..., k_{n-1}) sits at index sum k_i * stride_i with the last axis
/// contiguous.
class BernsteinPatch {
 public:
  /// Uses degree_in(i) of p per axis (at least 1).
  BernsteinPatch(const Polynomial& p, std::vector<Interval> box);

  const std::vector<Interval>& box() const { return box_; }
  const std::vector<unsigned>& degrees() const { return degrees_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational min() const;
  Rational max() const;

 private:
  std::vector<Interval> box_;
  std::vector<unsigned> degrees_;
  std::vector<Rational> coeffs_;
};

/// Bernstein basis polynomial C(N,k) t^k (1-t)^(N-k) with t = (x_var - lo)/(hi - lo),
/// living in a ring with nvars variables.
Polynomial bernstein_basis(std::size_t nvars, std::size_t var, const Interval& axis, unsigned degree, unsigned k);

/// Splits a box in two halves along its longest axis (lowest index on ties).
std::pair<std::vector<Interval>, std::vector<Interval>> bisect(std::span<const Interval> box);

/// The 2^n corners of a box followed by its centre.
std::vector<Point> corners_and_centre(std::span<const Interval> box);

}  // namespace posop
