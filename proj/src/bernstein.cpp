#include "posop/bernstein.hpp"

#include <algorithm>

#include "posop/errors.hpp"

namespace posop {

BernsteinPatch::BernsteinPatch(const Polynomial& p, std::vector<Interval> box) : box_(std::move(box)) {
  const std::size_t n = p.nvars();
  if (box_.size() != n) throw DimensionError("box dimension does not match polynomial");
  degrees_.resize(n);
  for (std::size_t i = 0; i < n; ++i) degrees_[i] = std::max(1u, p.degree_in(i));

  std::vector<Polynomial> affine;
  for (std::size_t i = 0; i < n; ++i)
    affine.push_back(Polynomial::constant(n, box_[i].lo) + box_[i].width() * Polynomial::variable(n, i));
  const Polynomial shifted = compose(p, affine);

  std::vector<std::size_t> stride(n, 1);
  for (std::size_t i = n - 1; i > 0; --i) stride[i - 1] = stride[i] * (degrees_[i] + 1);
  const std::size_t total = stride[0] * (degrees_[0] + 1);
  coeffs_.assign(total, Rational(0));
  for (const auto& [alpha, c] : shifted.terms()) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) idx += alpha[i] * stride[i];
    coeffs_[idx] = c;
  }

  // b_k = sum_{j <= k} C(k,j)/C(N,j) a_j, one axis at a time.
  for (std::size_t axis = 0; axis < n; ++axis) {
    const unsigned N = degrees_[axis];
    std::vector<Rational> next(total, Rational(0));
    for (std::size_t idx = 0; idx < total; ++idx) {
      const unsigned k = static_cast<unsigned>((idx / stride[axis]) % (N + 1));
      const std::size_t base = idx - k * stride[axis];
      Rational acc = 0;
      for (unsigned j = 0; j <= k; ++j) {
        const Rational& a = coeffs_[base + j * stride[axis]];
        if (a == 0) continue;
        acc += Rational(binomial(k, j)) / Rational(binomial(N, j)) * a;
      }
      next[idx] = acc;
    }
    coeffs_ = std::move(next);
  }
}

Rational BernsteinPatch::min() const { return *std::min_element(coeffs_.begin(), coeffs_.end()); }
Rational BernsteinPatch::max() const { return *std::max_element(coeffs_.begin(), coeffs_.end()); }

Polynomial bernstein_basis(std::size_t nvars, std::size_t var, const Interval& axis, unsigned degree, unsigned k) {
  if (k > degree) throw Error("Bernstein index exceeds degree");
  const Rational inv_w = 1 / axis.width();
  const Polynomial t = (Polynomial::variable(nvars, var) - Polynomial::constant(nvars, axis.lo)) * inv_w;
  const Polynomial one_minus_t = Polynomial::constant(nvars, 1) - t;
  return Rational(binomial(degree, k)) * (power(t, k) * power(one_minus_t, degree - k));
}

std::pair<std::vector<Interval>, std::vector<Interval>> bisect(std::span<const Interval> box) {
  std::size_t axis = 0;
  for (std::size_t i = 1; i < box.size(); ++i)
    if (box[i].width() > box[axis].width()) axis = i;
  std::vector<Interval> left(box.begin(), box.end());
  std::vector<Interval> right(box.begin(), box.end());
  const Rational mid = (box[axis].lo + box[axis].hi) / 2;
  left[axis].hi = mid;
  right[axis].lo = mid;
  return {std::move(left), std::move(right)};
}

std::vector<Point> corners_and_centre(std::span<const Interval> box) {
  const std::size_t n = box.size();
  std::vector<Point> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Point x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> (n - 1 - i)) & 1 ? box[i].hi : box[i].lo;
    out.push_back(std::move(x));
  }
  Point c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = (box[i].lo + box[i].hi) / 2;
  out.push_back(std::move(c));
  return out;
}

}  // namespace posop
