#include <doctest.h>

#include "posop/adjoint.hpp"
#include "posop/errors.hpp"
#include "posop/preserver.hpp"
#include "support.hpp"

using namespace posop;
using testing::P;
using testing::pt;

namespace {

Operator op(const char* text) { return parse_operator(text); }

const char* const signed_rank = "rank{(x0 + 2; lebesgue([-1,1])), (-x0^2; lebesgue([0,1]))}";
const char* const nonneg_rank = "rank{(x0 + 2; lebesgue([-1,0])), (x0 + 2 - x0^2; lebesgue([0,1]))}";

}  // namespace

TEST_CASE("adjoint of the basic classes") {
  const Measure leb = Measure::lebesgue(Interval{-1, 0});
  const Measure scaled = adjoint_apply(op("mul(x0)"), leb);
  CHECK(integrate(scaled, P("1")) == make_rational(-1, 2));
  CHECK(to_atomic(adjoint_apply(op("endo(x0/2)"), Measure::dirac(pt({1})))) ==
        std::optional(std::vector<Atom>{{Point{make_rational(1, 2)}, 1}}));
  CHECK(measures_equal(adjoint_apply(op("diff(0)"), leb), leb) == std::optional<bool>(true));
  CHECK_THROWS_AS(adjoint_apply(op("diff(1)"), leb), UnsupportedError);
  CHECK_THROWS_AS(adjoint_apply(op("sum(mul(x0), diff(2))"), leb), UnsupportedError);
}

TEST_CASE("mu_x") {
  const Operator rank = op("rank{(x0^2; dirac(1/2)), (x0 + 1; lebesgue([0,1]))}");
  const Point x = pt({2});
  const Measure expected = sum({scalar_mul(4, Measure::dirac({Rational(1, 2)})),
                                scalar_mul(3, Measure::lebesgue(Interval{0, 1}))});
  CHECK(measures_equal(mu_x(rank, x), expected) == std::optional<bool>(true));
  CHECK(to_atomic(mu_x(op("mul(x0^2 + 1)"), pt({3}))) == std::optional(std::vector<Atom>{{pt({3}), 10}}));
  const Measure m0 = mu_x(op(signed_rank), pt({0}));
  CHECK(integrate(m0, P("1")) == 4);
  CHECK(measures_equal(m0, scalar_mul(2, Measure::lebesgue(Interval{-1, 1}))) == std::optional<bool>(true));
}

TEST_CASE("star_A") {
  const Operator atoms = op("rank{(x0^2; dirac(1/2)), (x0 + 3; dirac(-1))}");
  CHECK(star_A(atoms, parse_cell("[0,1]"), pt({2})) == 4);
  CHECK(star_A(atoms, parse_cell("[-1,1]"), pt({2})) == 9);
  CHECK(star_A(atoms, parse_cell("(-1,0]"), pt({2})) == 0);
  const Operator mul = op("mul(x0 + 2)");
  CHECK(star_A(mul, parse_cell("[0,1]"), pt({1})) == 3);
  CHECK(star_A(mul, parse_cell("[0,1)"), pt({1})) == 0);
  CHECK(star_A(op("endo(x0/2)"), parse_cell("[0,1]"), pt({1})) == 1);
  CHECK(star_A(op("endo(x0/2)"), parse_cell("[0,1/2)"), pt({1})) == 0);
}

TEST_CASE("step functions") {
  const StepFunction s = step_approximation(P("x0^2"), Interval{-1, 1}, 4);
  CHECK(s.pieces.size() == 4);
  CHECK(s.disjoint());
  CHECK(s(pt({1})) == Rational(9, 16));
  CHECK(s(pt({0})) == Rational(1, 16));
  CHECK(s(pt({2})) == 0);

  const Operator certified = op("mul(x0 + 2)");
  StepFunction one;
  one.pieces.push_back({Cell::closed(Interval{-1, 1}), 1});
  for (int k = -4; k <= 4; ++k) {
    const Point x{make_rational(k, 4)};
    CHECK(step_integral(certified, one, x) == eval(apply(certified, P("1")), x));
    CHECK(step_integral(certified, StepFunction{}, x) == 0);
    CHECK(step_integral(op("diff(0)"), s, x) == s(x));
  }
}

TEST_CASE("finite range detection") {
  const FiniteRange two = finite_range_detect(op("rank{(x0; dirac(0)), (x0^2 + 1; dirac(1))}"), 3);
  CHECK(two.kind == FiniteRange::Kind::finite_rank);
  CHECK(two.basis.size() == 2);
  const FiniteRange mul = finite_range_detect(op("mul(x0)"), 4);
  CHECK(mul.kind == FiniteRange::Kind::not_detected);
  CHECK(mul.ranks == std::vector<std::size_t>{1, 2, 3, 4, 5});

  const FiniteRange open = finite_range_detect(op(signed_rank), 4);
  REQUIRE(open.kind == FiniteRange::Kind::finite_rank);
  REQUIRE(open.basis.size() == 2);
  CHECK(open.basis[0].f == P("x0 + 2"));
  CHECK(open.basis[1].f == P("x0^2"));
  CHECK(!certified_nonnegative(open.basis[1].nu));
  CHECK(finite_rank_equal(op(signed_rank), op(nonneg_rank)) == std::optional<bool>(true));
  CHECK(finite_rank_equal(op(signed_rank), op("rank{(x0 + 2; lebesgue([-1,1]))}")) == std::optional<bool>(false));
  CHECK(!finite_rank_equal(op(signed_rank), op("mul(x0)")));
  CHECK(equal_on_degree(op(signed_rank), op(nonneg_rank), 6));

  // Finite rank through composition on either side.
  const FiniteRange composed = finite_range_detect(op("compose(mul(x0), rank{(1; dirac(0)), (x0; dirac(1))})"), 3);
  CHECK(composed.kind == FiniteRange::Kind::finite_rank);
  CHECK(composed.basis.size() == 2);
  const FiniteRange inner = finite_range_detect(op("compose(rank{(1; lebesgue([0,1]))}, endo(x0^2))"), 3);
  CHECK(inner.kind == FiniteRange::Kind::finite_rank);
  CHECK(inner.basis.size() == 1);
  CHECK(finite_range_detect(op("mul(0)"), 3).basis.empty());
  // Dependent pairs merge into one basis element.
  const FiniteRange merged = finite_range_detect(op("rank{(x0; dirac(0)), (2*x0; dirac(1))}"), 2);
  CHECK(merged.basis.size() == 1);
  CHECK(finite_range_detect(op("diff(1)"), 4).kind == FiniteRange::Kind::not_detected);
}

TEST_CASE("star_A from a finite-rank basis") {
  const FiniteRange fr = finite_range_detect(op(signed_rank), 2);
  const Cell a = parse_cell("[0,1/2]");
  const Polynomial star = star_A_polynomial(fr, a);
  CHECK(star == P("1/2*x0 + 1 - 1/2*x0^2"));
  for (int k = -4; k <= 4; ++k) {
    const Point x{make_rational(k, 4)};
    CHECK(eval(star, x) == star_A(op(signed_rank), a, x));
  }
}

TEST_CASE("duality with mu_x") {
  testing::Gen gen(89);
  for (const auto& [name, o] : testing::constructive_corpus()) {
    for (int i = 0; i < 20; ++i) {
      const Point x{gen.rational_in(-1, 1, 20)};
      const Polynomial p = gen.poly(1, 6);
      CHECK_MESSAGE(integrate(mu_x(o, x), p) == eval(apply(o, p), x), name);
    }
  }
}

TEST_CASE("adjoints of compositions are contravariant") {
  testing::Gen gen(97);
  const auto corpus = testing::constructive_corpus();
  for (int i = 0; i < 60; ++i) {
    const Operator& a = corpus[gen.below(corpus.size())].second;
    const Operator& b = corpus[gen.below(corpus.size())].second;
    const Measure mu = gen.coin() ? Measure::lebesgue({Interval{gen.rational_in(-1, 0, 4), 1}}, gen.poly(1, 2))
                                  : Measure::atomic({{Point{gen.rational_in(-1, 1, 8)}, gen.rational()},
                                                     {Point{gen.rational_in(-1, 1, 8)}, gen.rational()}});
    const Polynomial p = gen.poly(1, 4);
    CHECK(integrate(adjoint_apply(compose(a, b), mu), p) == integrate(mu, apply(compose(a, b), p)));
    CHECK(integrate(adjoint_apply(compose(a, b), mu), p) == integrate(adjoint_apply(b, adjoint_apply(a, mu)), p));
  }
}

TEST_CASE("star_A lies between 0 and the sup of op(1)") {
  testing::Gen gen(101);
  const DomainSet s = DomainSet::interval(-1, 1);
  for (const auto& [name, o] : testing::preserver_corpus()) {
    const Rational bound = sup_norm(apply(o, P("1")), s, Rational(1, 1000000)).hi;
    for (int i = 0; i < 30; ++i) {
      Rational a = gen.rational_in(-1, 1, 16), b = gen.rational_in(-1, 1, 16);
      if (b < a) std::swap(a, b);
      const Cell cell{{Bound{a, b, gen.coin(), gen.coin()}}};
      const Point x{gen.rational_in(-1, 1, 16)};
      const Rational v = star_A(o, cell, x);
      CHECK_MESSAGE(v >= 0, name);
      CHECK_MESSAGE(v <= bound, name);
    }
  }
}
