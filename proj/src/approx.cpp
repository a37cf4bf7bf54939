#include "posop/approx.hpp"

#include <algorithm>
#include <sstream>

#include "posop/adjoint.hpp"
#include "posop/bernstein.hpp"
#include "posop/errors.hpp"
#include "posop/measure.hpp"

namespace posop {

namespace {

Rational ratio(std::size_t k, std::size_t n) {
  return Rational(static_cast<unsigned long>(k)) / Rational(static_cast<unsigned long>(n));
}

/// Mixed-radix enumeration of all index tuples in [0, size)^n, last axis fastest.
template <class F>
void for_each_index(std::size_t n, std::size_t size, F&& visit) {
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    visit(std::as_const(idx));
    std::size_t j = n;
    while (j > 0) {
      if (++idx[j - 1] < size) break;
      idx[j - 1] = 0;
      --j;
    }
    if (j == 0) return;
  }
}

const Rational& sup_tolerance() {
  static const Rational eps(1, 1000000);
  return eps;
}

}  // namespace

Rational diameter_upper(const Rational& square) {
  if (square == 0) return 0;
  for (unsigned bits = 2;; ++bits) {
    const Rational hi = sqrt_upper(square, bits);
    const Rational lo = sqrt_lower(square, bits);
    if (lo > 0 && hi * 8 <= lo * 9) return hi;
  }
}

Partition partition(const DomainSet& s, std::size_t per_axis) {
  if (!s.compact()) throw UnsupportedError("partition needs a compact domain, got " + to_string(s));
  if (per_axis == 0) throw Error("partition needs at least one cell per axis");
  const auto axes = s.axes();
  const std::size_t n = axes.size();
  Partition out;
  out.per_axis = per_axis;
  Rational square = 0;
  for (const auto& axis : axes) {
    const Rational side = axis.width() * ratio(1, per_axis);
    square += side * side;
  }
  out.diameter = n == 1 ? axes[0].width() * ratio(1, per_axis) : diameter_upper(square);
  for_each_index(n, per_axis, [&](const std::vector<std::size_t>& idx) {
    Cell cell;
    Point anchor;
    for (std::size_t j = 0; j < n; ++j) {
      const bool last = idx[j] + 1 == per_axis;
      const Rational lo = axes[j].lo + axes[j].width() * ratio(idx[j], per_axis);
      const Rational hi = last ? axes[j].hi : axes[j].lo + axes[j].width() * ratio(idx[j] + 1, per_axis);
      cell.axes.push_back(Bound{lo, hi, true, last});
      anchor.push_back((lo + hi) / 2);
    }
    out.cells.push_back(std::move(cell));
    out.anchors.push_back(std::move(anchor));
  });
  return out;
}

Polynomial indicator_poly(const Cell& a, const DomainSet& s, unsigned degree) {
  if (degree == 0) throw Error("indicator degree must be at least 1");
  const auto axes = s.axes();
  const std::size_t n = axes.size();
  if (a.dimension() != n) throw DimensionError("cell and domain dimensions differ");
  Polynomial f = Polynomial::constant(n, 1);
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial factor(n);
    for (unsigned k = 0; k <= degree; ++k) {
      const Rational node = axes[j].lo + axes[j].width() * ratio(k, degree);
      if (a.axes[j].contains(node)) factor += bernstein_basis(n, j, axes[j], degree, k);
    }
    f = f * factor;
    if (f.is_zero()) break;
  }
  return f;
}

std::vector<Point> grid_points(const DomainSet& s, std::size_t per_axis) {
  if (per_axis < 2) throw Error("grid needs at least two points per axis");
  const auto axes = s.axes();
  std::vector<Point> out;
  for_each_index(axes.size(), per_axis, [&](const std::vector<std::size_t>& idx) {
    Point x;
    for (std::size_t j = 0; j < axes.size(); ++j) x.push_back(axes[j].lo + axes[j].width() * ratio(idx[j], per_axis - 1));
    out.push_back(std::move(x));
  });
  return out;
}

AccuracyCheck accuracy_check(const Operator& op, const Partition& part, const std::vector<Polynomial>& indicators,
                             std::span<const Point> grid) {
  if (indicators.size() != part.cells.size()) throw Error("one indicator per cell expected");
  AccuracyCheck out;
  out.threshold = part.diameter * ratio(1, part.cells.size());
  out.max_deviation = 0;
  try {
    for (const auto& x : grid) {
      const Measure m = mu_x(op, x);
      if (const auto atoms = to_atomic(m)) {
        for (std::size_t i = 0; i < part.cells.size(); ++i) {
          Rational dev = 0;
          for (const auto& atom : *atoms)
            dev += atom.weight * ((part.cells[i].contains(atom.point) ? 1 : 0) - indicators[i](atom.point));
          out.max_deviation = std::max(out.max_deviation, abs(dev));
        }
        continue;
      }
      for (std::size_t i = 0; i < part.cells.size(); ++i) {
        const Rational dev = measure_of_set(m, part.cells[i]) - integrate(m, indicators[i]);
        out.max_deviation = std::max(out.max_deviation, abs(dev));
      }
    }
  } catch (const UnsupportedError& e) {
    out.status = AccuracyCheck::Status::skipped;
    out.reason = std::string("accuracy check skipped: ") + e.what();
    return out;
  }
  out.status = out.max_deviation <= out.threshold ? AccuracyCheck::Status::pass : AccuracyCheck::Status::fail;
  out.reason = "max grid deviation " + out.max_deviation.get_str() + (out.passed() ? " <= " : " > ") +
               out.threshold.get_str();
  return out;
}

SimpleApproximant build_simple(const Operator& op, const DomainSet& s, std::size_t per_axis, unsigned degree,
                               std::size_t grid) {
  if (op.nvars() != s.dimension()) throw DimensionError("operator and domain dimensions differ");
  SimpleApproximant out{op, partition(s, per_axis), degree, {}, {}, Operator::zero(op.nvars()), {}};
  std::vector<Operator::RankTerm> terms;
  for (std::size_t i = 0; i < out.part.cells.size(); ++i) {
    out.indicators.push_back(indicator_poly(out.part.cells[i], s, degree));
    out.images.push_back(apply(op, out.indicators.back()));
    terms.push_back({out.images.back(), Measure::dirac(out.part.anchors[i])});
  }
  out.psi = Operator::finite_rank(std::move(terms));
  const auto points = grid_points(s, grid);
  out.accuracy = accuracy_check(op, out.part, out.indicators, points);
  return out;
}

Polynomial j_weight(const Polynomial& p) {
  Polynomial j = Polynomial::constant(p.nvars(), 1);
  for (std::size_t v = 0; v < p.nvars(); ++v) {
    const Polynomial d = partial(p, v);
    j += d * d;
  }
  return j;
}

Rational error_bound(const Operator& op, const Polynomial& p, const Rational& diameter, const DomainSet& s,
                     const Budget& budget) {
  const Polynomial one = apply(op, Polynomial::constant(s.dimension(), 1));
  const Rational& eps = sup_tolerance();
  const Rational op_one = sup_norm(one, s, eps, budget).hi;
  const Rational j = sup_norm(j_weight(p), s, eps, budget).hi;
  const Rational sup_p = sup_norm(p, s, eps, budget).hi;
  return diameter * (op_one * j + sup_p);
}

std::string ConvergenceTable::to_csv() const {
  std::ostringstream out;
  out << "r,D,N,poly-id,measured_error,bound,bound_claimed,pass\n";
  for (const auto& row : rows)
    out << row.r << ',' << row.diameter.get_str() << ',' << row.degree << ',' << row.poly_id << ','
        << row.measured_error.get_str() << ',' << row.bound.get_str() << ','
        << (row.bound_claimed ? "true" : "false") << ',' << (row.pass ? "true" : "false") << '\n';
  return out.str();
}

bool ConvergenceTable::bound_violated() const {
  return std::any_of(rows.begin(), rows.end(), [](const ConvergenceRow& row) { return row.bound_claimed && !row.pass; });
}

const Rational& ConvergenceTable::error(std::size_t r, const std::string& poly_id) const {
  for (const auto& row : rows)
    if (row.r == r && row.poly_id == poly_id) return row.measured_error;
  throw Error("no row for r = " + std::to_string(r) + ", " + poly_id);
}

ConvergenceTable converge_report(const Operator& op, const DomainSet& s,
                                 const std::vector<std::pair<std::string, Polynomial>>& polys,
                                 const ApproxOptions& options) {
  auto schedule = options.schedule;
  std::sort(schedule.begin(), schedule.end());
  const auto points = grid_points(s, options.grid);
  ConvergenceTable table;
  for (const std::size_t r : schedule) {
    const unsigned degree = options.degree ? options.degree(r) : options.degree_factor * static_cast<unsigned>(r);
    const SimpleApproximant approx = build_simple(op, s, r, degree, options.grid);
    table.accuracy.emplace_back(r, approx.accuracy);
    for (const auto& [id, p] : polys) {
      const Polynomial diff = apply(op, p) - apply(approx.psi, p);
      Rational measured = 0;
      for (const auto& x : points) measured = std::max(measured, abs(diff(x)));
      ConvergenceRow row;
      row.r = r;
      row.diameter = approx.part.diameter;
      row.degree = degree;
      row.poly_id = id;
      row.measured_error = measured;
      row.bound = error_bound(op, p, approx.part.diameter, s, options.budget);
      row.bound_claimed = approx.accuracy.passed();
      row.pass = measured <= row.bound;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace posop
