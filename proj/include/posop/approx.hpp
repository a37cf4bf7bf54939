#pragma once

#include <functional>
#include <string>
#include <vector>

#include "posop/domain.hpp"
#include "posop/nonneg.hpp"
#include "posop/operator.hpp"

namespace posop {

/// Uniform grid partition of a compact S into half-open cells. Along every
/// axis the last cell is closed on the right, so the cells are pairwise
/// disjoint and cover S.
struct Partition {
  std::size_t per_axis = 0;
  std::vector<Cell> cells;
  /// Cell midpoints.
  std::vector<Point> anchors;
  /// Rational upper bound for every cell diameter.
  Rational diameter;
};

Partition partition(const DomainSet& s, std::size_t per_axis);

/// Upper bound for sqrt(square): sqrt_upper at the least precision (at
/// least 2 bits) whose upper value is within 9/8 of the lower one.
Rational diameter_upper(const Rational& square);

/// Degree-N (per axis) Bernstein approximant of 1_A over the box of S: the
/// coefficient of a basis element is 1 when its node lies in A, else 0.
Polynomial indicator_poly(const Cell& a, const DomainSet& s, unsigned degree);

/// `per_axis` equispaced points per axis, endpoints included.
std::vector<Point> grid_points(const DomainSet& s, std::size_t per_axis);

struct AccuracyCheck {
  enum class Status { pass, fail, skipped };

  Status status = Status::skipped;
  Rational max_deviation;
  /// D / r with r the number of cells.
  Rational threshold;
  std::string reason;

  bool passed() const { return status == Status::pass; }
};

/// max over grid points x and cells A_i of |mu_x(A_i) - int f_i dmu_x|
/// against D / r. Skipped when op has no constructive adjoint.
AccuracyCheck accuracy_check(const Operator& op, const Partition& part, const std::vector<Polynomial>& indicators,
                             std::span<const Point> grid);

/// Psi(p) = sum p(a_i) op(f_i), a member of the simple preservers when every
/// image op(f_i) is nonnegative on S.
struct SimpleApproximant {
  Operator source;
  Partition part;
  unsigned degree = 0;
  std::vector<Polynomial> indicators;
  std::vector<Polynomial> images;
  Operator psi;
  AccuracyCheck accuracy;
};

SimpleApproximant build_simple(const Operator& op, const DomainSet& s, std::size_t per_axis, unsigned degree,
                               std::size_t grid = 101);

/// J(p) = 1 + sum_j (d p / d x_j)^2.
Polynomial j_weight(const Polynomial& p);

/// D * (hi|op(1)| * hi|J(p)| + hi|p|) with sup-norm upper enclosures.
Rational error_bound(const Operator& op, const Polynomial& p, const Rational& diameter, const DomainSet& s,
                     const Budget& budget = {});

struct ConvergenceRow {
  std::size_t r = 0;
  Rational diameter;
  unsigned degree = 0;
  std::string poly_id;
  Rational measured_error;
  Rational bound;
  bool bound_claimed = false;
  bool pass = false;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  /// Accuracy outcome per r, in schedule order.
  std::vector<std::pair<std::size_t, AccuracyCheck>> accuracy;

  /// Columns r,D,N,poly-id,measured_error,bound,bound_claimed,pass with exact
  /// rationals.
  std::string to_csv() const;
  /// True when some row with a claimed bound exceeds it.
  bool bound_violated() const;
  /// measured_error for (r, poly_id); throws Error when absent.
  const Rational& error(std::size_t r, const std::string& poly_id) const;
};

struct ApproxOptions {
  std::vector<std::size_t> schedule{2, 4, 8, 16};
  /// N = degree_factor * r unless `degree` is set.
  unsigned degree_factor = 4;
  std::function<unsigned(std::size_t)> degree;
  std::size_t grid = 101;
  Budget budget;
};

ConvergenceTable converge_report(const Operator& op, const DomainSet& s,
                                 const std::vector<std::pair<std::string, Polynomial>>& polys,
                                 const ApproxOptions& options = {});

}  // namespace posop
