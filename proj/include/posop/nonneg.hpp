#pragma once

#include <optional>
#include <string>

#include "posop/domain.hpp"
#include "posop/polynomial.hpp"

namespace posop {

/// Limits for the subdivision searches.
struct Budget {
  std::size_t max_boxes = 20000;
  unsigned max_depth = 30;
};

/// Outcome of a nonnegativity test. A falsified verdict carries x in S with
/// p(x) = value < 0.
struct NonnegVerdict {
  enum class Kind { certified, falsified, unknown };

  Kind kind = Kind::unknown;
  Point witness;
  Rational value;
  std::string reason;

  static NonnegVerdict certified() { return {Kind::certified, {}, 0, {}}; }
  static NonnegVerdict falsified(Point x, Rational v) { return {Kind::falsified, std::move(x), std::move(v), {}}; }
  static NonnegVerdict unknown(std::string why) { return {Kind::unknown, {}, 0, std::move(why)}; }

  bool is_certified() const { return kind == Kind::certified; }
  bool is_falsified() const { return kind == Kind::falsified; }
};

std::string to_string(const NonnegVerdict& v);

/// Is p >= 0 on S? Exact in one variable; Bernstein subdivision on boxes;
/// sampling only (never certified) on R^n, n >= 2.
NonnegVerdict nonneg_on(const Polynomial& p, const DomainSet& s, const Budget& budget = {});

/// Strict positivity p > 0 on S. `witness`, when present, has p(witness) <= 0.
struct PositivityVerdict {
  enum class Kind { positive, not_positive, unknown };

  Kind kind = Kind::unknown;
  std::optional<Point> witness;
  Rational value;
  std::string reason;
};

PositivityVerdict positive_on(const Polynomial& p, const DomainSet& s, const Budget& budget = {});

/// Rational bounds lo <= max_S |p| <= hi.
struct Enclosure {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

/// Sup norm on compact S with hi - lo <= eps. Throws UnsupportedError on
/// non-compact S and Error when the subdivision budget runs out.
Enclosure sup_norm(const Polynomial& p, const DomainSet& s, const Rational& eps, const Budget& budget = {});

}  // namespace posop
