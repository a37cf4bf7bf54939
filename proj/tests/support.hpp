#pragma once

// Seeded generators and independent oracles shared by the test binaries.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "posop/domain.hpp"
#include "posop/measure.hpp"
#include "posop/moment_check.hpp"
#include "posop/operator.hpp"
#include "posop/polynomial.hpp"

namespace testing {

using namespace posop;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t bound) { return rng_() % bound; }
  bool coin(unsigned one_in = 2) { return below(one_in) == 0; }
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

  /// num / den with |num| <= max_abs, 1 <= den <= max_den.
  Rational rational(int max_abs = 5, int max_den = 4) {
    return make_rational(between(-max_abs, max_abs), between(1, max_den));
  }
  Rational rational_in(const Rational& lo, const Rational& hi, int steps = 64) {
    return lo + (hi - lo) * make_rational(between(0, steps), steps);
  }

  Polynomial poly(std::size_t n, unsigned degree, int max_abs = 5, int max_den = 4) {
    Polynomial p(n);
    for (const auto& alpha : MultiIndex::up_to_degree(n, degree))
      if (!coin(3)) p.add_term(alpha, rational(max_abs, max_den));
    return p;
  }

  Point point_in(std::span<const Interval> box, int steps = 64) {
    Point x;
    for (const auto& axis : box) x.push_back(rational_in(axis.lo, axis.hi, steps));
    return x;
  }

  Interval interval(int max_abs = 3) {
    Rational a = rational(max_abs, 2);
    Rational b = rational(max_abs, 2);
    while (a == b) b = rational(max_abs, 2);
    if (b < a) std::swap(a, b);
    return {a, b};
  }

  SymMatrix sym_matrix(std::size_t size, int max_abs = 4) {
    SymMatrix m(size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i; j < size; ++j) m.set(i, j, rational(max_abs, 3));
    return m;
  }

  /// Gram matrix B^T B, PSD by construction and often singular.
  SymMatrix gram_matrix(std::size_t size, std::size_t rank) {
    std::vector<std::vector<Rational>> b(rank, std::vector<Rational>(size));
    for (auto& row : b)
      for (auto& v : row) v = rational(3, 2);
    SymMatrix m(size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i; j < size; ++j) {
        Rational s = 0;
        for (std::size_t k = 0; k < rank; ++k) s += b[k][i] * b[k][j];
        m.set(i, j, s);
      }
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Polynomial P(const char* text, std::size_t n = 1) { return parse_polynomial(text, n); }
inline Point pt(std::initializer_list<long> xs) {
  Point x;
  for (long v : xs) x.push_back(Rational(v));
  return x;
}

namespace oracle {

/// Term-by-term power rule.
inline Polynomial derivative(const Polynomial& p, const MultiIndex& alpha) {
  Polynomial out(p.nvars());
  for (const auto& [beta, c] : p.terms()) {
    Rational coef = c;
    std::vector<unsigned> e(beta.exponents().begin(), beta.exponents().end());
    bool zero = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < alpha[i]; ++k) {
        if (e[i] == 0) {
          zero = true;
          break;
        }
        coef *= e[i]--;
      }
      if (zero) break;
    }
    if (!zero) out.add_term(MultiIndex(e), coef);
  }
  return out;
}

/// Naive evaluation x^alpha by repeated multiplication.
inline Rational eval(const Polynomial& p, std::span<const Rational> x) {
  Rational s = 0;
  for (const auto& [alpha, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (unsigned k = 0; k < alpha[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

inline double eval_double(const Polynomial& p, std::span<const double> x) {
  double s = 0;
  for (const auto& [alpha, c] : p.terms()) {
    double t = c.get_d();
    for (std::size_t i = 0; i < alpha.size(); ++i) t *= std::pow(x[i], alpha[i]);
    s += t;
  }
  return s;
}

/// int over the box of p * density, by the antiderivative per monomial.
inline Rational box_integral(const Polynomial& p, std::span<const Interval> box) {
  Rational s = 0;
  for (const auto& [alpha, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < box.size(); ++i) {
      const unsigned k = alpha[i] + 1;
      t *= (pow(box[i].hi, k) - pow(box[i].lo, k)) / Rational(k);
    }
    s += t;
  }
  return s;
}

/// Substitution by expanding every monomial as a product of the f_i.
inline Polynomial compose(const Polynomial& p, const std::vector<Polynomial>& f) {
  const std::size_t m = f.empty() ? 1 : f[0].nvars();
  Polynomial out(m);
  for (const auto& [alpha, c] : p.terms()) {
    Polynomial t = Polynomial::constant(m, c);
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (unsigned k = 0; k < alpha[i]; ++k) t = t * f[i];
    out += t;
  }
  return out;
}

/// Smallest eigenvalue in double precision.
double min_eigenvalue(const SymMatrix& m);
double max_abs_entry(const SymMatrix& m);

}  // namespace oracle

/// Operators in the constructive adjoint class on one variable, used by the
/// duality and bound suites.
std::vector<std::pair<std::string, Operator>> constructive_corpus();

/// Certified preservers on [-1,1].
std::vector<std::pair<std::string, Operator>> preserver_corpus();

}  // namespace testing
