#include <doctest.h>

#include "posop/adjoint.hpp"
#include "posop/approx.hpp"
#include "posop/errors.hpp"
#include "posop/preserver.hpp"
#include "support.hpp"

using namespace posop;
using testing::P;
using testing::pt;

namespace {

Operator op(const char* text) { return parse_operator(text); }

const DomainSet unit = DomainSet::interval(0, 1);
const DomainSet sym = DomainSet::interval(-1, 1);

}  // namespace

TEST_CASE("partitions") {
  const Partition two = partition(sym, 2);
  REQUIRE(two.cells.size() == 2);
  CHECK(two.diameter == 1);
  CHECK(two.anchors == std::vector<Point>{{make_rational(-1, 2)}, {make_rational(1, 2)}});
  CHECK(two.cells[0] == parse_cell("[-1,0)"));
  CHECK(two.cells[1] == parse_cell("[0,1]"));

  const Partition square = partition(DomainSet::box({{0, 1}, {0, 1}}), 2);
  CHECK(square.cells.size() == 4);
  CHECK(square.diameter == make_rational(3, 4));
  CHECK(square.diameter * square.diameter >= make_rational(1, 2));

  const Partition one = partition(DomainSet::interval(2, 5), 1);
  CHECK(one.cells.size() == 1);
  CHECK(one.diameter == 3);
  CHECK_THROWS_AS(partition(DomainSet::real_line(), 2), UnsupportedError);
}

TEST_CASE("partition invariants") {
  testing::Gen gen(103);
  for (int i = 0; i < 20; ++i) {
    const bool two = gen.coin();
    const DomainSet s = two ? DomainSet::box({gen.interval(), gen.interval()}) : DomainSet::interval(-1, 3);
    const Partition part = partition(s, 1 + gen.below(5));
    for (std::size_t a = 0; a < part.cells.size(); ++a) {
      CHECK(part.cells[a].contains(part.anchors[a]));
      for (std::size_t b = a + 1; b < part.cells.size(); ++b) CHECK(!part.cells[a].intersect(part.cells[b]));
      Rational square = 0;
      for (const auto& axis : part.cells[a].axes) square += (axis.hi - axis.lo) * (axis.hi - axis.lo);
      CHECK(square <= part.diameter * part.diameter);
    }
    for (int k = 0; k < 200; ++k) {
      const Point x = gen.point_in(s.axes(), 12);
      int hits = 0;
      for (const auto& cell : part.cells) hits += cell.contains(x);
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("indicator polynomials") {
  CHECK(indicator_poly(Cell::closed(Interval{0, 1}), unit, 5) == P("1"));
  CHECK(indicator_poly(parse_cell("[0,1/2)"), unit, 1) == P("1 - x0"));
  CHECK(indicator_poly(parse_cell("[0,1/2)"), unit, 3) + indicator_poly(parse_cell("[1/2,1]"), unit, 3) == P("1"));
}

TEST_CASE("indicators form a partition of unity with values in [0,1]") {
  for (const DomainSet& s : {sym, DomainSet::box({{0, 1}, {-1, 1}})}) {
    for (std::size_t r = 1; r <= 4; ++r)
      for (unsigned n : {1u, 3u, 6u}) {
        const Partition part = partition(s, r);
        Polynomial total(s.dimension());
        for (const auto& cell : part.cells) {
          const Polynomial f = indicator_poly(cell, s, n);
          total += f;
          if (s.univariate()) {
            CHECK(nonneg_on(f, s).is_certified());
            CHECK(nonneg_on(Polynomial::constant(1, 1) - f, s).is_certified());
          }
        }
        CHECK(total == Polynomial::constant(s.dimension(), 1));
      }
  }
}

TEST_CASE("accuracy check") {
  const Partition part = partition(sym, 2);
  const auto grid = grid_points(sym, 11);
  std::vector<Polynomial> fs;
  for (const auto& cell : part.cells) fs.push_back(indicator_poly(cell, sym, 40));

  const AccuracyCheck zero = accuracy_check(op("mul(0)"), part, fs, grid);
  CHECK(zero.passed());
  CHECK(zero.max_deviation == 0);

  // Identity: deviation is max |1_A(x) - f(x)| over grid points and cells.
  const AccuracyCheck id = accuracy_check(op("diff(0)"), part, fs, grid);
  Rational expected = 0;
  for (const auto& x : grid)
    for (std::size_t i = 0; i < fs.size(); ++i)
      expected = std::max(expected, Rational(abs(Rational(part.cells[i].contains(x) ? 1 : 0) - eval(fs[i], x))));
  CHECK(id.max_deviation == expected);
  CHECK(id.threshold == make_rational(1, 2));

  // One atom at 0: deviation |1_A(0) - f_i(0)|, the same for both cells.
  const AccuracyCheck atom = accuracy_check(op("rank{(1; dirac(0))}"), part, fs, grid);
  CHECK(atom.max_deviation == abs(1 - eval(fs[1], pt({0}))));
  CHECK(atom.passed() == (atom.max_deviation <= make_rational(1, 2)));

  const auto interior = grid_points(DomainSet::interval(make_rational(-3, 4), make_rational(-1, 4)), 5);
  std::vector<Polynomial> sharp;
  for (const auto& cell : part.cells) sharp.push_back(indicator_poly(cell, sym, 200));
  CHECK(accuracy_check(op("diff(0)"), part, sharp, interior).passed());

  const AccuracyCheck skipped = accuracy_check(op("diff(1)"), part, fs, grid);
  CHECK(skipped.status == AccuracyCheck::Status::skipped);
}

TEST_CASE("simple approximants") {
  const SimpleApproximant single = build_simple(op("diff(0)"), unit, 1, 3, 11);
  CHECK(single.indicators == std::vector<Polynomial>{P("1")});
  CHECK(apply(single.psi, P("x0^2 + x0")) == P("3/4"));

  const SimpleApproximant sq = build_simple(op("mul(x0^2)"), sym, 2, 4, 11);
  REQUIRE(sq.indicators.size() == 2);
  testing::Gen gen(107);
  for (int i = 0; i < 10; ++i) {
    const Polynomial p = gen.poly(1, 3);
    const Polynomial expected = eval(p, Point{make_rational(-1, 2)}) * (P("x0^2") * sq.indicators[0]) +
                                eval(p, Point{make_rational(1, 2)}) * (P("x0^2") * sq.indicators[1]);
    CHECK(apply(sq.psi, p) == expected);
  }

  const SimpleApproximant half = build_simple(op("endo(x0/2)"), sym, 4, 6, 11);
  REQUIRE(half.images.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(half.images[i] == compose(half.indicators[i], std::vector{P("x0/2")}));
  CHECK(finite_range_detect(half.psi, 2).kind == FiniteRange::Kind::finite_rank);
}

TEST_CASE("simple approximants of certified preservers are certified") {
  for (const auto& [name, o] : testing::preserver_corpus()) {
    const SimpleApproximant a = build_simple(o, sym, 3, 6, 5);
    for (const auto& g : a.images) CHECK_MESSAGE(nonneg_on(g, sym).is_certified(), name);
    CHECK_MESSAGE(structural_certificate(a.psi, sym).has_value(), name);
  }
}

TEST_CASE("error bound") {
  const Rational eps(1, 1000000);
  const Operator two = op("mul(x0 + 2)");
  const Rational norm_one = sup_norm(P("x0 + 2"), sym, eps).hi;
  CHECK(j_weight(P("5")) == P("1"));
  CHECK(error_bound(two, P("5"), 1, sym) == norm_one + 5);
  CHECK(j_weight(P("x0")) == P("2"));
  CHECK(error_bound(two, P("x0"), 1, sym) == 2 * norm_one + 1);
  for (std::size_t r : {1u, 2u, 4u, 8u}) {
    const Rational d = Rational(2) / Rational(static_cast<unsigned long>(r));
    CHECK(error_bound(op("diff(0)"), P("x0"), d, sym) == Rational(6) / Rational(static_cast<unsigned long>(r)));
  }
  CHECK(j_weight(P("x0*x1", 2)) == P("1 + x0^2 + x1^2", 2));
}

TEST_CASE("convergence reports") {
  ApproxOptions options;
  options.grid = 41;
  const ConvergenceTable id = converge_report(op("diff(0)"), sym, {{"x0", P("x0")}}, options);
  REQUIRE(id.rows.size() == 4);
  for (std::size_t i = 1; i < id.rows.size(); ++i) {
    CHECK(id.rows[i - 1].r < id.rows[i].r);
    CHECK(id.rows[i].measured_error < id.rows[i - 1].measured_error);
  }
  const ConvergenceTable zero = converge_report(op("mul(0)"), sym, {{"x0^2", P("x0^2")}, {"1", P("1")}}, options);
  for (const auto& row : zero.rows) CHECK(row.measured_error == 0);

  options.schedule = {4, 2};
  const ConvergenceTable two = converge_report(op("mul(x0 + 2)"), sym, {{"x0^2", P("x0^2")}}, options);
  CHECK(two.rows.front().r == 2);
  for (const auto& row : two.rows)
    if (row.bound_claimed) CHECK(row.measured_error <= row.bound);
  CHECK(!two.bound_violated());
  const std::string csv = two.to_csv();
  CHECK(csv.rfind("r,D,N,poly-id,measured_error,bound,bound_claimed,pass\n", 0) == 0);
  CHECK(csv.find("\n2,1,8,x0^2,") != std::string::npos);
}

TEST_CASE("claimed bounds hold and psi(1) approaches op(1)") {
  ApproxOptions options;
  options.grid = 21;
  options.schedule = {1, 2, 3};
  const std::vector<std::pair<std::string, Polynomial>> polys{
      {"1", P("1")}, {"x0", P("x0")}, {"x0^2", P("x0^2")}, {"x0^3 - x0", P("x0^3 - x0")}};
  for (const auto& [name, o] : testing::preserver_corpus()) {
    const ConvergenceTable t = converge_report(o, sym, polys, options);
    for (const auto& row : t.rows) {
      if (row.bound_claimed) CHECK_MESSAGE(row.measured_error <= row.bound, name);
      if (row.poly_id == "1") CHECK_MESSAGE(row.measured_error <= row.bound, name);
    }
  }
}
