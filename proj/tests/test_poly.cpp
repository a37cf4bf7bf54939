#include <doctest.h>

#include "posop/errors.hpp"
#include "posop/polynomial.hpp"
#include "support.hpp"

using namespace posop;
using testing::P;
using testing::pt;

TEST_CASE("rationals are canonical") {
  const Rational q = parse_rational("-6/8");
  CHECK(q.get_num() == -3);
  CHECK(q.get_den() == 4);
  CHECK(parse_rational("+12") == 12);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK(to_string(make_rational(4, -6)) == "-2/3");
}

TEST_CASE("simplest rational in an interval") {
  CHECK(simplest_between(make_rational(1, 3), make_rational(2, 3)) == make_rational(1, 2));
  CHECK(simplest_between(make_rational(-7, 2), make_rational(5, 1)) == 0);
  CHECK(simplest_between(make_rational(7, 5), make_rational(3, 2)) == make_rational(3, 2));
  CHECK(simplest_between(make_rational(-5, 2), make_rational(-9, 4)) == make_rational(-5, 2));
}

TEST_CASE("square root bounds") {
  const Rational half(1, 2);
  CHECK(sqrt_upper(half, 2) == make_rational(3, 4));
  CHECK(sqrt_lower(half, 2) == make_rational(1, 2));
  CHECK(sqrt_upper(4, 5) == 2);
  for (unsigned bits = 1; bits < 20; ++bits) {
    const Rational hi = sqrt_upper(2, bits), lo = sqrt_lower(2, bits);
    CHECK(hi * hi >= 2);
    CHECK(lo * lo <= 2);
    CHECK(hi - lo <= Rational(1, 1UL << bits));
  }
}

TEST_CASE("eval") {
  CHECK(eval(P("x0 + 1"), pt({-1})) == 0);
  CHECK(eval(P("x0 + 1/2"), pt({-1})) == make_rational(-1, 2));
  CHECK(eval(P("x0^2*x1 - x1", 2), pt({2, 3})) == 9);
  CHECK_THROWS_AS(eval(P("x0"), pt({1, 2})), DimensionError);
}

TEST_CASE("ring operations") {
  CHECK(arith(P("x0 + 1"), P("x0 - 1"), ArithOp::mul) == P("x0^2 - 1"));
  const Polynomial p = P("3*x0^3 - 1/2*x0 + 7");
  CHECK(arith(p, scale(p, -1), ArithOp::add).is_zero());
  const Polynomial t = P("x0");
  CHECK(arith(scale(t + P("2"), 2), scale(t * t, 1), ArithOp::sub) == P("-x0^2 + 2*x0 + 4"));
  CHECK_THROWS_AS(arith(P("x0"), P("x1", 2), ArithOp::add), DimensionError);
}

TEST_CASE("derivatives") {
  CHECK(derivative(P("x0 + 1"), MultiIndex{1}) == P("1"));
  CHECK(derivative(P("x0^2"), MultiIndex{2}) == P("2"));
  CHECK(derivative(P("x0^2*x1", 2), MultiIndex{1, 1}) == P("2*x0", 2));
  CHECK(derivative(P("x0^2*x1", 2), MultiIndex{0, 2}).is_zero());
}

TEST_CASE("composition") {
  CHECK(compose(P("x0 + 1"), std::vector{P("x0 + 1")}) == P("x0 + 2"));
  const Polynomial q = P("x0^2*x1 - 3*x1 + 1/5", 2);
  CHECK(compose(q, std::vector{P("x0", 2), P("x1", 2)}) == q);
  CHECK(compose(P("x0^2"), std::vector{P("x0/2")}) == P("1/4*x0^2"));
  CHECK_THROWS_AS(compose(q, std::vector{P("x0")}), DimensionError);
}

TEST_CASE("text grammar round trip") {
  CHECK(to_string(P("3/2*x0^2*x1 - x1 + 1", 2)) == "3/2*x0^2*x1 - x1 + 1");
  CHECK(to_string(P("  x1 +x0*x0 ", 2)) == "x0^2 + x1");
  CHECK(to_string(Polynomial(3)) == "0");
  CHECK(P("(x0 + 1)^3") == P("x0^3 + 3*x0^2 + 3*x0 + 1"));
  CHECK_THROWS_AS(P("x0 +"), ParseError);
  CHECK_THROWS_AS(P("x3", 2), ParseError);
  try {
    P("x0 + * 2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  testing::Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + gen.below(3);
    const Polynomial p = gen.poly(n, 4);
    CHECK(parse_polynomial(to_string(p), n) == p);
  }
}

TEST_CASE("derivative is linear and matches the power rule") {
  testing::Gen gen(7);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + gen.below(3);
    const Polynomial p = gen.poly(n, 4), q = gen.poly(n, 4);
    std::vector<unsigned> e(n);
    for (auto& v : e) v = static_cast<unsigned>(gen.below(3));
    const MultiIndex alpha(e);
    CHECK(derivative(p + q, alpha) == derivative(p, alpha) + derivative(q, alpha));
    CHECK(derivative(p, alpha) == testing::oracle::derivative(p, alpha));
  }
}

TEST_CASE("derivative of monomials, exhaustive") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto all = MultiIndex::up_to_degree(n, 4);
    for (const auto& alpha : all)
      for (const auto& beta : all) {
        const Polynomial d = derivative(Polynomial::monomial(beta), alpha);
        if (alpha.precedes(beta)) {
          Rational c = Rational(beta.factorial()) / Rational((beta - alpha).factorial());
          CHECK(d == Polynomial::monomial(beta - alpha, c));
        } else {
          CHECK(d.is_zero());
        }
      }
  }
}

TEST_CASE("composition is an algebra homomorphism") {
  testing::Gen gen(13);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 1 + gen.below(2), m = 1 + gen.below(2);
    const Polynomial p = gen.poly(n, 2), q = gen.poly(n, 2);
    std::vector<Polynomial> f;
    for (std::size_t j = 0; j < n; ++j) f.push_back(gen.poly(m, 2));
    CHECK(compose(p * q, f) == compose(p, f) * compose(q, f));
    CHECK(compose(p, f) == testing::oracle::compose(p, f));
  }
}

TEST_CASE("translation") {
  const Polynomial p = P("x0^3 - x0");
  const Point one = pt({1});
  CHECK(translate(p, one) == compose(p, std::vector{P("x0 + 1")}));
}
