#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "posop/measure.hpp"
#include "posop/moment_check.hpp"
#include "posop/polynomial.hpp"

namespace posop {

struct OperatorNode;

/// Linear operator on Q[x0..x{n-1}], as an immutable expression tree.
class Operator {
 public:
  /// p -> f p
  static Operator mul(Polynomial f);
  /// p -> p(f_1, ..., f_n)
  static Operator endo(std::vector<Polynomial> f);
  /// p -> D^alpha p
  static Operator diff(MultiIndex alpha);
  struct RankTerm {
    Polynomial f;
    Measure nu;
  };
  /// p -> sum f_i int p dnu_i
  static Operator finite_rank(std::vector<RankTerm> terms);
  static Operator identity(std::size_t nvars);
  static Operator zero(std::size_t nvars);

  std::size_t nvars() const { return n_; }
  const OperatorNode& node() const { return *node_; }

 private:
  Operator(std::shared_ptr<const OperatorNode> node, std::size_t n) : node_(std::move(node)), n_(n) {}
  friend Operator sum(std::vector<Operator>);
  friend Operator compose(const Operator&, const Operator&);
  friend Operator scalar_mul(const Rational&, const Operator&);

  std::shared_ptr<const OperatorNode> node_;
  std::size_t n_;
};

struct MulOp {
  Polynomial f;
};
struct EndoOp {
  std::vector<Polynomial> f;
};
struct DiffOp {
  MultiIndex alpha;
};
struct RankOp {
  std::vector<Operator::RankTerm> terms;
};
struct SumOp {
  std::vector<Operator> parts;
};
/// outer o inner
struct ComposeOp {
  Operator outer;
  Operator inner;
};
struct ScalarOp {
  Rational c;
  Operator inner;
};

struct OperatorNode {
  std::variant<MulOp, EndoOp, DiffOp, RankOp, SumOp, ComposeOp, ScalarOp> v;
};

Operator sum(std::vector<Operator> parts);
Operator compose(const Operator& outer, const Operator& inner);
Operator scalar_mul(const Rational& c, const Operator& op);

Polynomial apply(const Operator& op, const Polynomial& p);

std::string to_string(const Operator& op);
/// Parses the operator grammar. The ring is the largest of `nvars` (0 to
/// infer), the highest variable mentioned, and endo/diff/measure arities.
Operator parse_operator(std::string_view text, std::size_t nvars = 0);

/// Truncated representation sum_{|alpha| <= d} q_alpha D^alpha.
class DiffOpRep {
 public:
  DiffOpRep(std::size_t nvars, unsigned degree);

  std::size_t nvars() const { return n_; }
  unsigned degree() const { return d_; }
  const std::map<MultiIndex, Polynomial>& coefficients() const { return q_; }
  const Polynomial& coefficient(const MultiIndex& alpha) const;
  void set(const MultiIndex& alpha, Polynomial q);

  bool constant_coefficients() const;
  /// Largest |alpha| with q_alpha != 0 (0 for the zero operator).
  unsigned order() const;

  bool operator==(const DiffOpRep&) const = default;

 private:
  std::size_t n_;
  unsigned d_;
  std::map<MultiIndex, Polynomial> q_;
};

/// Exact on polynomials of degree <= rep.degree(); throws otherwise.
Polynomial apply(const DiffOpRep& rep, const Polynomial& p);

/// q_beta = (1/beta!) (op(X^beta) - sum_{alpha < beta} beta!/(beta-alpha)! q_alpha X^{beta-alpha}).
DiffOpRep extract_coeffs(const Operator& op, unsigned d);

/// q_alpha = (1/alpha!) prod (f_i - X_i)^{alpha_i}.
DiffOpRep taylor_endo_coeffs(const std::vector<Polynomial>& f, unsigned d);

/// Constant-coefficient operator with coefficients q_alpha(a).
DiffOpRep localize_at(const DiffOpRep& rep, std::span<const Rational> a);

/// The representation as an operator: sum of q_alpha . D^alpha.
Operator to_operator(const DiffOpRep& rep);

std::string to_string(const DiffOpRep& rep);

/// Moment test of (alpha! r_alpha) for a constant-coefficient operator.
struct GlobalCheck {
  MomentSequence sequence;
  MomentVerdict verdict;
  /// A refuted verdict proves that the operator does not preserve
  /// nonnegativity on S only when 0 lies in S.
  bool refutation_sound;
};

GlobalCheck global_preserver_check(const DiffOpRep& rep, const DomainSet& s, unsigned m);

/// For polynomial coefficients on R^n: tests the localized operators at the
/// given points, and for one variable additionally the sign conditions
/// q_0 >= 0, q_2 >= 0, 2 q_0 q_2 >= q_1^2 symbolically over all of R.
struct LocalScan {
  bool refuted = false;
  Point point;
  std::string reason;
  std::size_t points_checked = 0;
};

LocalScan local_preserver_scan(const DiffOpRep& rep, const std::vector<Point>& points, unsigned m);

struct OrderVerdict {
  unsigned order;
  /// order == degree of the representation: the true order may be larger.
  bool truncated;
  /// Finite order >= 1 was asserted: not an R^n-nonnegativity preserver.
  bool not_global_preserver;
};

OrderVerdict finite_order_verdict(const DiffOpRep& rep, bool asserted_finite_order = false);

/// p -> op(p(X + a))(X - a).
Operator translate_conjugate(const Operator& op, std::span<const Rational> a);

}  // namespace posop
