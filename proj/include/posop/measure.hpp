#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "posop/domain.hpp"
#include "posop/nonneg.hpp"
#include "posop/polynomial.hpp"
#include "posop/text.hpp"

namespace posop {

struct Atom {
  Point point;
  Rational weight;

  bool operator==(const Atom&) const = default;
};

struct MeasureNode;

/// Exact finite (possibly signed) measure with all moments finite, kept as
/// an immutable expression tree. Copies share structure.
class Measure {
 public:
  static Measure dirac(Point x);
  static Measure atomic(std::vector<Atom> atoms);
  static Measure lebesgue(std::vector<Interval> box, Polynomial density);
  static Measure lebesgue(const Interval& interval);
  /// The zero measure on R^n.
  static Measure zero(std::size_t nvars);

  std::size_t dimension() const { return dim_; }
  const MeasureNode& node() const { return *node_; }

 private:
  Measure(std::shared_ptr<const MeasureNode> node, std::size_t dim) : node_(std::move(node)), dim_(dim) {}
  friend Measure scale_by_poly(const Polynomial&, const Measure&);
  friend Measure pushforward(const std::vector<Polynomial>&, const Measure&);
  friend Measure sum(std::vector<Measure>);
  friend Measure scalar_mul(const Rational&, const Measure&);

  std::shared_ptr<const MeasureNode> node_;
  std::size_t dim_;
};

struct AtomicNode {
  std::vector<Atom> atoms;
};
struct LebesgueNode {
  std::vector<Interval> box;
  Polynomial density;
};
/// f . mu, A -> int_A f dmu.
struct ScaleNode {
  Polynomial f;
  Measure inner;
};
/// mu o f^{-1}.
struct PushNode {
  std::vector<Polynomial> f;
  Measure inner;
};
struct SumNode {
  std::vector<Measure> parts;
};
struct ScalarNode {
  Rational c;
  Measure inner;
};

struct MeasureNode {
  std::variant<AtomicNode, LebesgueNode, ScaleNode, PushNode, SumNode, ScalarNode> v;
};

Measure scale_by_poly(const Polynomial& f, const Measure& mu);
Measure pushforward(const std::vector<Polynomial>& f, const Measure& mu);
Measure sum(std::vector<Measure> parts);
Measure scalar_mul(const Rational& c, const Measure& mu);

/// Exact integral of p against mu.
Rational integrate(const Measure& mu, const Polynomial& p);

/// int_A p dmu over a cell (ends open or closed). Pushforwards of
/// non-atomic measures need a one-dimensional inner measure and preimage
/// boundaries at rational points; otherwise UnsupportedError.
Rational integrate_over(const Measure& mu, const Polynomial& p, const Cell& a);
Rational measure_of_set(const Measure& mu, const Cell& a);

/// Merged, zero-free atoms sorted lexicographically when the measure is
/// purely atomic; nullopt as soon as a density node is involved.
std::optional<std::vector<Atom>> to_atomic(const Measure& mu);

/// Closed box containing the support. nullopt for the zero measure.
std::optional<std::vector<Interval>> support_hull(const Measure& mu);

/// Membership in M+(R^n): sound but not complete (false may mean "could
/// not prove").
bool certified_nonnegative(const Measure& mu, const Budget& budget = {});

/// Support contained in S.
bool support_within(const Measure& mu, const DomainSet& s);

/// Exact equality as measures when both sides are built from atoms and
/// polynomial densities on boxes (pushforwards only of atomic measures);
/// nullopt otherwise.
std::optional<bool> measures_equal(const Measure& a, const Measure& b);

std::string to_string(const Measure& mu);
Measure parse_measure(std::string_view text);
/// Parses one measure at the cursor, leaving trailing input alone.
Measure parse_measure(text::Cursor& cur);

/// Moments r_alpha for |alpha| <= order.
class MomentSequence {
 public:
  MomentSequence(std::size_t nvars, unsigned order, std::map<MultiIndex, Rational> values);
  /// (r_0, r_1, ..., r_d) in one variable.
  static MomentSequence univariate(std::vector<Rational> values);

  std::size_t nvars() const { return nvars_; }
  unsigned order() const { return order_; }
  const std::map<MultiIndex, Rational>& values() const { return values_; }

  /// Throws InsufficientOrderError when |alpha| exceeds the order.
  const Rational& at(const MultiIndex& alpha) const;
  /// The Riesz functional L(p) = sum p_alpha r_alpha.
  Rational functional(const Polynomial& p) const;

 private:
  std::size_t nvars_;
  unsigned order_;
  std::map<MultiIndex, Rational> values_;
};

MomentSequence moments(const Measure& mu, unsigned order);

/// Comma-separated rationals, e.g. `1,1,1,1`.
MomentSequence parse_moment_sequence(std::string_view text);

}  // namespace posop
