#include "posop/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "posop/errors.hpp"
#include "posop/text.hpp"

namespace posop {

// ---------------------------------------------------------------- MultiIndex

MultiIndex MultiIndex::unit(std::size_t nvars, std::size_t i) {
  MultiIndex a(nvars);
  a.exps_.at(i) = 1;
  return a;
}

unsigned MultiIndex::degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0u); }

bool MultiIndex::precedes(const MultiIndex& beta) const {
  if (beta.size() != size()) throw DimensionError("multi-index length mismatch");
  for (std::size_t i = 0; i < size(); ++i)
    if (exps_[i] > beta.exps_[i]) return false;
  return true;
}

Integer MultiIndex::factorial() const {
  Integer out = 1;
  for (unsigned e : exps_) out *= posop::factorial(e);
  return out;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.size() != size()) throw DimensionError("multi-index length mismatch");
  MultiIndex out = *this;
  for (std::size_t i = 0; i < size(); ++i) out.exps_[i] += other.exps_[i];
  return out;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (!other.precedes(*this)) throw Error("multi-index difference would be negative");
  MultiIndex out = *this;
  for (std::size_t i = 0; i < size(); ++i) out.exps_[i] -= other.exps_[i];
  return out;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto c = degree() <=> other.degree(); c != 0) return c;
  return exps_ <=> other.exps_;
}

std::vector<MultiIndex> MultiIndex::up_to_degree(std::size_t nvars, unsigned degree) {
  std::vector<MultiIndex> out;
  MultiIndex current(nvars);
  // enumerate all exponent vectors with sum <= degree
  auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
    if (var == nvars) {
      out.push_back(current);
      return;
    }
    for (unsigned e = 0; e <= remaining; ++e) {
      current.exps_[var] = e;
      self(self, var + 1, remaining - e);
    }
    current.exps_[var] = 0;
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- Polynomial

namespace {

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars())
    throw DimensionError("polynomials in " + std::to_string(a.nvars()) + " and " +
                         std::to_string(b.nvars()) + " variables");
}

}  // namespace

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0) throw DimensionError("a polynomial ring needs at least one variable");
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(MultiIndex(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw DimensionError("variable index out of range");
  return monomial(MultiIndex::unit(nvars, i));
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, const Rational& c) {
  Polynomial p(alpha.size());
  p.add_term(alpha, c);
  return p;
}

Polynomial Polynomial::univariate(std::span<const Rational> coefficients) {
  Polynomial p(1);
  for (std::size_t k = 0; k < coefficients.size(); ++k)
    p.add_term(MultiIndex{static_cast<unsigned>(k)}, coefficients[k]);
  return p;
}

bool Polynomial::is_constant() const { return total_degree() <= 0; }

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.rbegin()->first.degree());
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha[var]);
  return d;
}

Rational Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(MultiIndex(nvars_)); }

void Polynomial::add_term(const MultiIndex& alpha, const Rational& c) {
  if (alpha.size() != nvars_) throw DimensionError("monomial length does not match ring");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::operator()(std::span<const Rational> x) const {
  if (x.size() != nvars_)
    throw DimensionError("point of dimension " + std::to_string(x.size()) + " for polynomial in " +
                         std::to_string(nvars_) + " variables");
  // Cache powers of each coordinate up to the degree needed.
  std::vector<std::vector<Rational>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    const unsigned d = degree_in(i);
    powers[i].reserve(d + 1);
    powers[i].emplace_back(1);
    for (unsigned k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * x[i]);
  }
  Rational sum = 0;
  for (const auto& [alpha, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (alpha[i]) term *= powers[i][alpha[i]];
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [alpha, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(*this, other);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ring(*this, other);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  Polynomial out(a.nvars());
  for (const auto& [alpha, ca] : a.terms())
    for (const auto& [beta, cb] : b.terms()) out.add_term(alpha + beta, ca * cb);
  return out;
}

Polynomial arith(const Polynomial& p, const Polynomial& q, ArithOp op) {
  switch (op) {
    case ArithOp::add: return p + q;
    case ArithOp::sub: return p - q;
    case ArithOp::mul: return p * q;
  }
  throw Error("unknown arithmetic operation");
}

Polynomial scale(const Polynomial& p, const Rational& c) { return p * c; }

Polynomial power(const Polynomial& p, unsigned k) {
  Polynomial out = Polynomial::constant(p.nvars(), 1);
  Polynomial base = p;
  while (k) {
    if (k & 1u) out = out * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return out;
}

Rational eval(const Polynomial& p, std::span<const Rational> x) { return p(x); }

Polynomial derivative(const Polynomial& p, const MultiIndex& alpha) {
  if (alpha.size() != p.nvars()) throw DimensionError("derivative order has wrong length");
  Polynomial out(p.nvars());
  for (const auto& [beta, c] : p.terms()) {
    if (!alpha.precedes(beta)) continue;
    Integer falling = 1;  // beta! / (beta - alpha)!
    for (std::size_t i = 0; i < beta.size(); ++i)
      for (unsigned k = 0; k < alpha[i]; ++k) falling *= beta[i] - k;
    out.add_term(beta - alpha, c * Rational(falling));
  }
  return out;
}

Polynomial partial(const Polynomial& p, std::size_t var) {
  return derivative(p, MultiIndex::unit(p.nvars(), var));
}

Polynomial compose(const Polynomial& p, std::span<const Polynomial> f) {
  if (f.size() != p.nvars())
    throw DimensionError("substitution needs " + std::to_string(p.nvars()) + " polynomials, got " +
                         std::to_string(f.size()));
  const std::size_t target = f.front().nvars();
  for (const auto& fi : f)
    if (fi.nvars() != target) throw DimensionError("substituted polynomials live in different rings");

  std::vector<std::vector<Polynomial>> powers(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const unsigned d = p.degree_in(i);
    powers[i].push_back(Polynomial::constant(target, 1));
    for (unsigned k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * f[i]);
  }
  Polynomial out(target);
  for (const auto& [alpha, c] : p.terms()) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < f.size(); ++i)
      if (alpha[i]) term = term * powers[i][alpha[i]];
    out += term;
  }
  return out;
}

Polynomial translate(const Polynomial& p, std::span<const Rational> shift) {
  if (shift.size() != p.nvars()) throw DimensionError("shift has wrong dimension");
  std::vector<Polynomial> f;
  for (std::size_t i = 0; i < p.nvars(); ++i)
    f.push_back(Polynomial::variable(p.nvars(), i) + Polynomial::constant(p.nvars(), shift[i]));
  return compose(p, f);
}

// ---------------------------------------------------------------- text

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [alpha, c] = *it;
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (!alpha[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (alpha[i] > 1) mono += "^" + std::to_string(alpha[i]);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars) : cur_(text), nvars_(nvars) {}

  Polynomial parse() {
    Polynomial p = expr();
    if (!cur_.at_end()) cur_.fail("unexpected trailing input");
    return p;
  }

 private:
  Polynomial expr() {
    Polynomial acc(nvars_);
    bool negate = false;
    if (cur_.consume('-')) negate = true;
    else cur_.consume('+');
    Polynomial t = term();
    acc = negate ? -t : t;
    while (true) {
      if (cur_.consume('+')) acc += term();
      else if (cur_.consume('-')) acc -= term();
      else break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (cur_.consume('*')) {
        acc = acc * factor();
      } else if (cur_.peek() == '/') {
        cur_.consume('/');
        const std::size_t at = cur_.position();
        Polynomial d = factor();
        if (!d.is_constant() || d.is_zero()) throw ParseError("division by a non-constant or zero", at);
        acc *= 1 / d.constant_term();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (cur_.consume('^')) base = power(base, cur_.unsigned_integer());
    return base;
  }

  Polynomial primary() {
    const char c = cur_.peek();
    if (c == '(') {
      cur_.consume('(');
      Polynomial inner = expr();
      cur_.expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial::constant(nvars_, cur_.unsigned_rational());
    if (c == '-') {  // unary minus inside a product, e.g. 2*-x0
      cur_.consume('-');
      return -factor();
    }
    const std::size_t at = cur_.position();
    const std::string id = cur_.identifier();
    if (id.size() >= 2 && id[0] == 'x' &&
        std::all_of(id.begin() + 1, id.end(), [](unsigned char ch) { return std::isdigit(ch) != 0; })) {
      const unsigned long idx = std::stoul(id.substr(1));
      if (idx >= nvars_)
        throw ParseError("variable " + id + " outside ring of " + std::to_string(nvars_) + " variables", at);
      return Polynomial::variable(nvars_, idx);
    }
    if (id.empty()) cur_.fail("expected number, variable or '('");
    throw ParseError("unknown identifier '" + id + "'", at);
  }

  text::Cursor cur_;
  std::size_t nvars_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
  return PolyParser(text, nvars).parse();
}

std::size_t infer_nvars(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'x') continue;
    if (i > 0 && (std::isalnum(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '_')) continue;
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i + 1) continue;
    n = std::max<std::size_t>(n, std::stoul(std::string(text.substr(i + 1, j - i - 1))) + 1);
  }
  return n;
}

}  // namespace posop
