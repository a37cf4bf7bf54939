#include <doctest.h>

#include "posop/errors.hpp"
#include "posop/moment_check.hpp"
#include "support.hpp"

using namespace posop;
using testing::P;
using testing::pt;

namespace {

SymMatrix matrix(std::vector<std::vector<Rational>> rows) {
  SymMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i; j < rows.size(); ++j) m.set(i, j, rows[i][j]);
  return m;
}

}  // namespace

TEST_CASE("hankel matrices") {
  CHECK(hankel(parse_moment_sequence("1,1,1"), 1) == matrix({{1, 1}, {1, 1}}));
  CHECK(hankel(parse_moment_sequence("1,-1/2,1/3"), 1) ==
        matrix({{1, make_rational(-1, 2)}, {make_rational(-1, 2), make_rational(1, 3)}}));
  CHECK(hankel(parse_moment_sequence("1,0,-1"), 1) == matrix({{1, 0}, {0, -1}}));
  CHECK_THROWS_AS(hankel(parse_moment_sequence("1,0"), 1), InsufficientOrderError);
}

TEST_CASE("localizing matrices") {
  CHECK(localizing_matrix(parse_moment_sequence("1,1"), P("x0 - 2"), 0) == matrix({{-1}}));
  const MomentSequence r = parse_moment_sequence("1,2,5,14,42");
  CHECK(localizing_matrix(r, P("1"), 2) == hankel(r, 2));
  const MomentSequence leb = moments(Measure::lebesgue(Interval{-1, 0}), 2);
  CHECK(localizing_matrix(leb, P("(x0 + 1)*(-x0)"), 0) == matrix({{make_rational(1, 6)}}));
  CHECK_THROWS_AS(localizing_matrix(parse_moment_sequence("1,1"), P("x0 - 2"), 1), InsufficientOrderError);
}

TEST_CASE("exact PSD test") {
  const PsdResult neg = is_psd_exact(matrix({{1, 0}, {0, -1}}));
  CHECK(!neg.psd);
  CHECK(neg.certificate == std::vector<Rational>{0, 1});
  CHECK(neg.value == -1);
  CHECK(is_psd_exact(matrix({{1, 1}, {1, 1}})).psd);
  SymMatrix hilbert(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) hilbert.set(i, j, Rational(1, static_cast<unsigned long>(i + j + 1)));
  const PsdResult h = is_psd_exact(hilbert);
  CHECK(h.psd);
  // Pivots of the Hilbert matrix LDL^T, computed by hand.
  CHECK(h.pivots == std::vector<Rational>{1, Rational(1, 12), Rational(1, 180), Rational(1, 2800)});
  // Zero diagonal with nonzero off-diagonal entry.
  const PsdResult z = is_psd_exact(matrix({{0, 1}, {1, 0}}));
  CHECK(!z.psd);
  CHECK(matrix({{0, 1}, {1, 0}}).quadratic_form(z.certificate) == z.value);
  CHECK(z.value < 0);
  CHECK(is_psd_exact(SymMatrix(0)).psd);
}

TEST_CASE("PSD verdicts agree with an eigenvalue oracle") {
  testing::Gen gen(41);
  int psd = 0, not_psd = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + gen.below(8);
    const SymMatrix m = i % 2 ? gen.sym_matrix(n) : gen.gram_matrix(n, 1 + gen.below(n));
    const PsdResult r = is_psd_exact(m);
    const double lambda = testing::oracle::min_eigenvalue(m);
    const double tol = 1e-9 * std::max(1.0, testing::oracle::max_abs_entry(m));
    if (r.psd) {
      ++psd;
      CHECK(lambda >= -tol);
    } else {
      ++not_psd;
      CHECK(lambda < tol);
      CHECK(m.quadratic_form(r.certificate) == r.value);
      CHECK(r.value < 0);
      for (const auto& v : r.certificate) CHECK(v.get_den() == 1);
    }
  }
  CHECK(psd >= 90);
  CHECK(not_psd >= 50);
}

TEST_CASE("moment check examples") {
  const MomentVerdict half = moment_check(parse_moment_sequence("1,1"), DomainSet::half_line(2), 0);
  CHECK(half.refuted());
  CHECK(half.order == 0);
  CHECK(half.value == -1);
  CHECK(half.failed_matrix == "localizer x0 - 2");

  for (unsigned m = 0; m <= 4; ++m) {
    const MomentVerdict v = moment_check(moments(Measure::dirac(pt({1})), 2 * m), DomainSet::real_line(), m);
    CHECK(!v.refuted());
    CHECK(v.order == m);
  }
  const MomentVerdict unit = moment_check(moments(Measure::lebesgue(Interval{0, 1}), 4), DomainSet::interval(0, 1), 2);
  CHECK(!unit.refuted());
  CHECK(unit.order == 2);
  const MomentVerdict line = moment_check(parse_moment_sequence("1,0,-1"), DomainSet::real_line(), 1);
  CHECK(line.refuted());
  CHECK(line.order == 1);
  CHECK(line.certificate == std::vector<Rational>{0, 1});
  CHECK_THROWS_AS(moment_check(parse_moment_sequence("1,0,1"), DomainSet::real_line(), 2), InsufficientOrderError);

  // Moments of a measure outside S are caught by the localizer.
  CHECK(moment_check(moments(Measure::dirac(pt({3})), 4), DomainSet::interval(0, 1), 2).refuted());
  const MomentVerdict plane = moment_check(moments(Measure::dirac(pt({0, 0})), 4),
                                           DomainSet::box({{0, 1}, {0, 1}}), 2);
  CHECK(!plane.refuted());
  CHECK(plane.necessary_only);
}

TEST_CASE("genuine measures are never refuted") {
  testing::Gen gen(43);
  for (int i = 0; i < 60; ++i) {
    const int kind = gen.between(0, 2);
    const DomainSet s = kind == 0 ? DomainSet::interval(-1, 1) : kind == 1 ? DomainSet::half_line(-1) : DomainSet::real_line();
    std::vector<Atom> atoms;
    for (int k = gen.between(1, 4); k > 0; --k) atoms.push_back({Point{gen.rational_in(-1, 1, 8)}, abs(gen.rational(3, 3)) + 1});
    const Measure mu = gen.coin() ? Measure::atomic(atoms)
                                  : sum({Measure::atomic(atoms),
                                         Measure::lebesgue({Interval{gen.rational_in(-1, 0, 4), 1}}, P("x0^2 + 1"))});
    const unsigned m = static_cast<unsigned>(gen.below(5));
    const MomentVerdict v = moment_check(moments(mu, 2 * m), s, m);
    CHECK(!v.refuted());
    CHECK(v.order == m);
  }
  const Measure plane = Measure::lebesgue({Interval{0, 1}, Interval{0, 1}}, P("1", 2));
  CHECK(!moment_check(moments(plane, 4), DomainSet::box({{0, 1}, {0, 1}}), 2).refuted());
}

TEST_CASE("refutation certificates are exact") {
  testing::Gen gen(47);
  for (int i = 0; i < 100; ++i) {
    std::vector<Rational> values;
    for (int k = 0; k <= 6; ++k) values.push_back(gen.rational(3, 2));
    values[0] = abs(values[0]);
    const MomentSequence r = MomentSequence::univariate(values);
    const DomainSet s = gen.coin() ? DomainSet::interval(-1, 1) : DomainSet::half_line(0);
    const MomentVerdict v = moment_check(r, s, 3);
    for (const auto& ch : v.checks)
      if (!ch.result.psd) {
        CHECK(ch.matrix.quadratic_form(ch.result.certificate) == ch.result.value);
        CHECK(ch.result.value < 0);
      }
    if (v.refuted()) CHECK(v.value < 0);
  }
}
