#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "posop/polynomial.hpp"
#include "posop/rational.hpp"

namespace posop {

/// Closed interval [lo, hi] with lo < hi.
struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool operator==(const Interval&) const = default;
};

/// One axis of a cell: an interval whose ends may be open. Degenerate
/// point axes (lo == hi, both closed) are allowed.
struct Bound {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(const Rational& x) const;
  bool empty() const;
  bool operator==(const Bound&) const = default;
};

/// Product of bounds; the sets on which measures are evaluated and the
/// pieces of partitions and step functions.
struct Cell {
  std::vector<Bound> axes;

  static Cell closed(std::span<const Interval> box);
  static Cell closed(const Interval& interval);

  std::size_t dimension() const { return axes.size(); }
  bool contains(std::span<const Rational> x) const;
  bool empty() const;
  std::optional<Cell> intersect(const Cell& other) const;
  bool operator==(const Cell&) const = default;
};

/// Parses `[a,b]`, `[a,b)`, `(a,b]`, products joined by `x`.
Cell parse_cell(std::string_view text);
std::string to_string(const Cell& cell);

/// The set S. Every supported variant is Zariski dense.
class DomainSet {
 public:
  struct IntervalSet { Interval interval; };
  struct BoxSet { std::vector<Interval> axes; };
  struct HalfLine { Rational start; };  // [start, inf)
  struct RealLine {};
  struct RealSpace { std::size_t n; };
  using Variant = std::variant<IntervalSet, BoxSet, HalfLine, RealLine, RealSpace>;

  static DomainSet interval(const Rational& a, const Rational& b);
  static DomainSet box(std::vector<Interval> axes);
  static DomainSet half_line(const Rational& c);
  static DomainSet real_line();
  static DomainSet real_space(std::size_t n);

  const Variant& variant() const { return v_; }
  std::size_t dimension() const;
  bool compact() const;
  bool connected() const { return true; }
  bool zariski_dense() const { return true; }
  bool univariate() const { return dimension() == 1; }
  bool contains(std::span<const Rational> x) const;

  /// Per-axis closed intervals for compact sets (a one-dimensional interval
  /// gives one axis). Throws UnsupportedError otherwise.
  std::vector<Interval> axes() const;
  Cell as_cell() const;

  /// For univariate sets: lower end (nullopt for -inf) and upper end.
  std::optional<Rational> lower() const;
  std::optional<Rational> upper() const;

  /// Polynomials g with S = {g >= 0}: x - a, b - x per axis, x - c for the
  /// half line. Empty for R and R^n.
  std::vector<Polynomial> defining_polynomials() const;

  bool operator==(const DomainSet& other) const;

 private:
  explicit DomainSet(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// `[-1,1]`, `[0,1]x[0,2]`, `[2,inf)`, `R`, `R^3`.
DomainSet parse_domain(std::string_view text);
std::string to_string(const DomainSet& s);

}  // namespace posop
