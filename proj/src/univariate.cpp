#include "posop/univariate.hpp"

#include <algorithm>
#include <functional>

#include "posop/errors.hpp"

namespace posop::univariate {

UPoly::UPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

UPoly::UPoly(const Polynomial& p) {
  if (p.nvars() != 1) throw DimensionError("univariate routine called on a polynomial in " +
                                           std::to_string(p.nvars()) + " variables");
  const int d = p.total_degree();
  if (d < 0) return;
  coeffs_.assign(static_cast<std::size_t>(d) + 1, Rational(0));
  for (const auto& [alpha, c] : p.terms()) coeffs_[alpha[0]] = c;
}

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * static_cast<unsigned long>(k));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (1 / leading());
}

Polynomial UPoly::to_polynomial() const { return Polynomial::univariate(coeffs_); }

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return UPoly(std::move(c));
}

UPoly UPoly::operator-() const {
  UPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const Rational& s) {
  std::vector<Rational> c = a.coeffs_;
  for (auto& x : c) x *= s;
  return UPoly(std::move(c));
}

DivMod divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db) + 1, Rational(0));
  const Rational lead_inv = 1 / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    const Rational factor = rem[static_cast<std::size_t>(k)] * lead_inv;
    if (factor == 0) continue;
    quot[static_cast<std::size_t>(k - db)] = factor;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= factor * b[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UPoly square_free_part(const UPoly& p) {
  if (p.degree() <= 0) return p;
  const UPoly g = gcd(p, p.derivative());
  return divmod(p, g).quotient.monic();
}

Rational cauchy_bound(const UPoly& p) {
  Rational m = 0;
  if (p.degree() <= 0) return Rational(1);
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, abs(Rational(p[static_cast<std::size_t>(k)] / p.leading())));
  return m + 1;
}

// ---------------------------------------------------------------- Sturm

SturmChain::SturmChain(const UPoly& square_free) {
  if (square_free.is_zero()) throw Error("Sturm chain of the zero polynomial");
  chain_.push_back(square_free);
  UPoly next = square_free.derivative();
  while (!next.is_zero()) {
    chain_.push_back(next);
    next = -divmod(chain_[chain_.size() - 2], chain_.back()).remainder;
  }
}

int SturmChain::sign_changes(const Rational& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain_) {
    const int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmChain::count_roots(const Rational& lo, const Rational& hi) const {
  return sign_changes(lo) - sign_changes(hi);
}

// ---------------------------------------------------------------- isolation

namespace {

/// A point strictly inside (lo, hi) where q does not vanish.
Rational split_point(const UPoly& q, const Rational& lo, const Rational& hi) {
  const Rational mid = (lo + hi) / 2;
  if (q(mid) != 0) return mid;
  for (unsigned long k = 1;; ++k) {
    for (unsigned long num : {k, k + 1}) {
      const Rational t(num, 2 * k + 1);
      const Rational m = lo + (hi - lo) * t;
      if (q(m) != 0) return m;
    }
  }
}

}  // namespace

std::vector<RootCell> isolate_roots(const UPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw Error("root isolation of the zero polynomial");
  if (lo > hi) throw Error("root isolation on an empty interval");
  std::vector<RootCell> out;
  if (p.degree() == 0) return out;
  const UPoly q = square_free_part(p);
  const SturmChain chain(q);
  if (q(lo) == 0) out.push_back({lo, lo, true});
  if (lo == hi) return out;

  std::function<void(const Rational&, const Rational&)> process = [&](const Rational& l, const Rational& r) {
    const int count = chain.count_roots(l, r);
    if (count == 0) return;
    const bool right_root = q(r) == 0;
    const int interior = count - (right_root ? 1 : 0);
    if (interior == 0) {
      out.push_back({r, r, true});
      return;
    }
    if (interior == 1 && !right_root && q(l) != 0) {
      out.push_back({l, r, false});
      return;
    }
    const Rational m = split_point(q, l, r);
    process(l, m);
    process(m, r);
  };
  process(lo, hi);
  return out;
}

RootCell refine(const UPoly& square_free, RootCell cell, const Rational& width) {
  if (cell.exact) return cell;
  int lo_sign = square_free.sign_at(cell.lo);
  while (cell.hi - cell.lo > width) {
    const Rational m = split_point(square_free, cell.lo, cell.hi);
    const int s = square_free.sign_at(m);
    if (s != lo_sign) {
      cell.hi = m;
    } else {
      cell.lo = m;
      lo_sign = s;
    }
  }
  return cell;
}

std::optional<Rational> rational_root_in(const UPoly& square_free, const RootCell& cell) {
  if (cell.exact) return cell.lo;
  // Any rational root a/b in lowest terms has b dividing the leading
  // coefficient of the primitive integer multiple of q.
  Integer lcm_den = 1;
  for (const auto& c : square_free.coefficients()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  Integer gcd_num = 0;
  for (const auto& c : square_free.coefficients()) {
    const Integer n = Rational(c * lcm_den).get_num();
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), n.get_mpz_t());
  }
  Integer lead = Rational(square_free.leading() * lcm_den).get_num();
  lead /= gcd_num;
  if (lead < 0) lead = -lead;
  // Two distinct rationals with denominators <= lead are >= 1/lead^2 apart.
  const Rational width(1, 2 * lead * lead);
  const RootCell tight = refine(square_free, cell, width);
  const Rational candidate = simplest_between(tight.lo, tight.hi);
  if (square_free(candidate) == 0) return candidate;
  return std::nullopt;
}

RootSet rational_roots(const UPoly& p, const Rational& lo, const Rational& hi) {
  RootSet out;
  if (p.degree() <= 0) return out;
  const UPoly q = square_free_part(p);
  for (const auto& cell : isolate_roots(q, lo, hi)) {
    if (auto r = rational_root_in(q, cell)) out.rational.push_back(*r);
    else out.all_rational = false;
  }
  return out;
}

std::pair<Rational, Rational> bernstein_range(const UPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) return {Rational(0), Rational(0)};
  const std::size_t n = static_cast<std::size_t>(p.degree());
  // Coefficients of p(lo + (hi - lo) t) in t, via repeated Horner shifts.
  std::vector<Rational> a = p.coefficients();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = n; k > i; --k) a[k - 1] += lo * a[k];
  const Rational w = hi - lo;
  Rational wk = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    a[k] *= wk;
    wk *= w;
  }
  Rational mn, mx;
  for (std::size_t k = 0; k <= n; ++k) {
    Rational b = 0;
    for (std::size_t j = 0; j <= k; ++j)
      b += Rational(binomial(static_cast<unsigned>(k), static_cast<unsigned>(j))) /
           Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(j))) * a[j];
    if (k == 0 || b < mn) mn = b;
    if (k == 0 || b > mx) mx = b;
  }
  return {mn, mx};
}

}  // namespace posop::univariate
