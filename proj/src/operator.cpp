#include "posop/operator.hpp"

#include <algorithm>

#include "posop/errors.hpp"
#include "posop/nonneg.hpp"
#include "posop/text.hpp"

namespace posop {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_ring(std::size_t n, const Polynomial& p, const char* what) {
  if (p.nvars() != n)
    throw DimensionError(std::string(what) + " lives in " + std::to_string(p.nvars()) + " variables, operator in " +
                         std::to_string(n));
}

}  // namespace

// ---------------------------------------------------------------- construction

Operator Operator::mul(Polynomial f) {
  const std::size_t n = f.nvars();
  return Operator(std::make_shared<const OperatorNode>(OperatorNode{MulOp{std::move(f)}}), n);
}

Operator Operator::endo(std::vector<Polynomial> f) {
  const std::size_t n = f.size();
  if (n == 0) throw DimensionError("endomorphism needs at least one component");
  for (const auto& fi : f) require_ring(n, fi, "endomorphism component");
  return Operator(std::make_shared<const OperatorNode>(OperatorNode{EndoOp{std::move(f)}}), n);
}

Operator Operator::diff(MultiIndex alpha) {
  const std::size_t n = alpha.size();
  if (n == 0) throw DimensionError("derivative needs a multi-index with at least one entry");
  return Operator(std::make_shared<const OperatorNode>(OperatorNode{DiffOp{std::move(alpha)}}), n);
}

Operator Operator::finite_rank(std::vector<RankTerm> terms) {
  if (terms.empty()) throw Error("finite-rank operator needs at least one pair");
  const std::size_t n = terms.front().f.nvars();
  for (const auto& t : terms) {
    require_ring(n, t.f, "finite-rank polynomial");
    if (t.nu.dimension() != n) throw DimensionError("finite-rank measure of the wrong dimension");
  }
  return Operator(std::make_shared<const OperatorNode>(OperatorNode{RankOp{std::move(terms)}}), n);
}

Operator Operator::identity(std::size_t nvars) {
  std::vector<Polynomial> f;
  for (std::size_t i = 0; i < nvars; ++i) f.push_back(Polynomial::variable(nvars, i));
  return endo(std::move(f));
}

Operator Operator::zero(std::size_t nvars) { return mul(Polynomial(nvars)); }

Operator sum(std::vector<Operator> parts) {
  if (parts.empty()) throw Error("sum of no operators");
  const std::size_t n = parts.front().nvars();
  for (const auto& p : parts)
    if (p.nvars() != n) throw DimensionError("summands act on different rings");
  if (parts.size() == 1) return parts.front();
  return Operator(std::make_shared<const OperatorNode>(OperatorNode{SumOp{std::move(parts)}}), n);
}

Operator compose(const Operator& outer, const Operator& inner) {
  if (outer.nvars() != inner.nvars()) throw DimensionError("composed operators act on different rings");
  return Operator(std::make_shared<const OperatorNode>(OperatorNode{ComposeOp{outer, inner}}), outer.nvars());
}

Operator scalar_mul(const Rational& c, const Operator& op) {
  return Operator(std::make_shared<const OperatorNode>(OperatorNode{ScalarOp{c, op}}), op.nvars());
}

Polynomial apply(const Operator& op, const Polynomial& p) {
  require_ring(op.nvars(), p, "argument");
  return std::visit(
      Overloaded{
          [&](const MulOp& o) { return o.f * p; },
          [&](const EndoOp& o) { return compose(p, o.f); },
          [&](const DiffOp& o) { return derivative(p, o.alpha); },
          [&](const RankOp& o) {
            Polynomial out(op.nvars());
            for (const auto& t : o.terms) {
              const Rational w = integrate(t.nu, p);
              if (w != 0) out += t.f * w;
            }
            return out;
          },
          [&](const SumOp& o) {
            Polynomial out(op.nvars());
            for (const auto& part : o.parts) out += apply(part, p);
            return out;
          },
          [&](const ComposeOp& o) { return apply(o.outer, apply(o.inner, p)); },
          [&](const ScalarOp& o) { return o.c == 0 ? Polynomial(op.nvars()) : apply(o.inner, p) * o.c; },
      },
      op.node().v);
}

// ---------------------------------------------------------------- text

std::string to_string(const Operator& op) {
  auto join = [](const auto& items, auto&& show) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ", ";
      out += show(items[i]);
    }
    return out;
  };
  return std::visit(
      Overloaded{
          [](const MulOp& o) { return "mul(" + to_string(o.f) + ")"; },
          [&](const EndoOp& o) {
            return "endo(" + join(o.f, [](const Polynomial& f) { return to_string(f); }) + ")";
          },
          [&](const DiffOp& o) {
            std::vector<unsigned> e(o.alpha.exponents().begin(), o.alpha.exponents().end());
            return "diff(" + join(e, [](unsigned k) { return std::to_string(k); }) + ")";
          },
          [&](const RankOp& o) {
            return "rank{" + join(o.terms, [](const Operator::RankTerm& t) {
                     return "(" + to_string(t.f) + "; " + to_string(t.nu) + ")";
                   }) + "}";
          },
          [&](const SumOp& o) {
            return "sum(" + join(o.parts, [](const Operator& p) { return to_string(p); }) + ")";
          },
          [](const ComposeOp& o) { return "compose(" + to_string(o.outer) + ", " + to_string(o.inner) + ")"; },
          [](const ScalarOp& o) { return "scale(" + o.c.get_str() + "; " + to_string(o.inner) + ")"; },
      },
      op.node().v);
}

namespace {

/// Thrown when a construct needs a larger ring than currently assumed.
struct Widen {
  std::size_t n;
};

class OperatorParser {
 public:
  OperatorParser(std::string_view input, std::size_t n, bool fixed) : cur_(input), n_(n), fixed_(fixed) {}

  Operator parse() {
    Operator op = parse_op();
    if (!cur_.at_end()) cur_.fail("unexpected trailing input");
    return op;
  }

 private:
  void arity(std::size_t k) {
    if (k == n_) return;
    if (!fixed_ && k > n_) throw Widen{k};
    cur_.fail("arity " + std::to_string(k) + " does not match the ring of " + std::to_string(n_) + " variables");
  }

  Polynomial poly_until(std::string_view stops) {
    cur_.skip_ws();
    const std::size_t at = cur_.position();
    const std::string_view t = cur_.balanced_until(stops);
    return text::Cursor::at_offset(at, [&] { return parse_polynomial(t, n_); });
  }

  Operator parse_op() {
    cur_.skip_ws();
    const std::size_t start = cur_.position();
    const std::string word = cur_.identifier();
    if (word.empty()) cur_.fail("expected an operator");
    if (word == "rank") {
      cur_.expect('{');
      std::vector<Operator::RankTerm> terms;
      do {
        cur_.expect('(');
        Polynomial f = poly_until(";");
        cur_.expect(';');
        Measure nu = parse_measure(cur_);
        arity(nu.dimension());
        cur_.expect(')');
        terms.push_back({std::move(f), std::move(nu)});
      } while (cur_.consume(','));
      cur_.expect('}');
      return Operator::finite_rank(std::move(terms));
    }
    cur_.expect('(');
    Operator out = Operator::zero(n_);
    if (word == "mul") {
      out = Operator::mul(poly_until(")"));
    } else if (word == "endo") {
      cur_.skip_ws();
      const std::size_t at = cur_.position();
      const std::string_view all = cur_.balanced_until(")");
      const auto pieces = text::split_top_level(all, ',');
      arity(pieces.size());
      std::vector<Polynomial> f;
      for (const auto& piece : pieces)
        f.push_back(text::Cursor::at_offset(at + piece.offset, [&] { return parse_polynomial(piece.text, n_); }));
      out = Operator::endo(std::move(f));
    } else if (word == "diff") {
      std::vector<unsigned> e{cur_.unsigned_integer()};
      while (cur_.consume(',')) e.push_back(cur_.unsigned_integer());
      arity(e.size());
      out = Operator::diff(MultiIndex(std::move(e)));
    } else if (word == "sum") {
      std::vector<Operator> parts{parse_op()};
      while (cur_.consume(',')) parts.push_back(parse_op());
      out = sum(std::move(parts));
    } else if (word == "compose") {
      const Operator a = parse_op();
      cur_.expect(',');
      const Operator b = parse_op();
      out = compose(a, b);
    } else if (word == "scale") {
      const Rational c = cur_.signed_rational();
      cur_.expect(';');
      out = scalar_mul(c, parse_op());
    } else {
      throw ParseError("unknown operator '" + word + "'", start);
    }
    cur_.expect(')');
    return out;
  }

  text::Cursor cur_;
  std::size_t n_;
  bool fixed_;
};

}  // namespace

Operator parse_operator(std::string_view input, std::size_t nvars) {
  std::size_t n = std::max<std::size_t>({nvars, infer_nvars(input), 1});
  for (;;) {
    try {
      return OperatorParser(input, n, nvars != 0).parse();
    } catch (const Widen& w) {
      n = w.n;
    } catch (const DimensionError& e) {
      throw ParseError(e.what(), 0);
    }
  }
}

// ---------------------------------------------------------------- representation

DiffOpRep::DiffOpRep(std::size_t nvars, unsigned degree) : n_(nvars), d_(degree) {
  for (const auto& alpha : MultiIndex::up_to_degree(nvars, degree)) q_.emplace(alpha, Polynomial(nvars));
}

const Polynomial& DiffOpRep::coefficient(const MultiIndex& alpha) const {
  auto it = q_.find(alpha);
  if (it == q_.end())
    throw InsufficientOrderError("coefficient of order " + std::to_string(alpha.degree()) +
                                 " beyond the truncation degree " + std::to_string(d_));
  return it->second;
}

void DiffOpRep::set(const MultiIndex& alpha, Polynomial q) {
  if (alpha.size() != n_ || alpha.degree() > d_) throw DimensionError("multi-index outside the representation");
  require_ring(n_, q, "coefficient");
  q_[alpha] = std::move(q);
}

bool DiffOpRep::constant_coefficients() const {
  return std::all_of(q_.begin(), q_.end(), [](const auto& kv) { return kv.second.is_constant(); });
}

unsigned DiffOpRep::order() const {
  unsigned out = 0;
  for (const auto& [alpha, q] : q_)
    if (!q.is_zero()) out = std::max(out, alpha.degree());
  return out;
}

Polynomial apply(const DiffOpRep& rep, const Polynomial& p) {
  require_ring(rep.nvars(), p, "argument");
  if (p.total_degree() > static_cast<int>(rep.degree()))
    throw InsufficientOrderError("polynomial of degree " + std::to_string(p.total_degree()) +
                                 " exceeds the truncation degree " + std::to_string(rep.degree()));
  Polynomial out(rep.nvars());
  for (const auto& [alpha, q] : rep.coefficients()) {
    if (q.is_zero() || alpha.degree() > static_cast<unsigned>(std::max(p.total_degree(), 0))) continue;
    out += q * derivative(p, alpha);
  }
  return out;
}

DiffOpRep extract_coeffs(const Operator& op, unsigned d) {
  const std::size_t n = op.nvars();
  DiffOpRep rep(n, d);
  for (const auto& beta : MultiIndex::up_to_degree(n, d)) {
    Polynomial acc = apply(op, Polynomial::monomial(beta));
    const Integer beta_fact = beta.factorial();
    for (const auto& [alpha, q] : rep.coefficients()) {
      if (alpha == beta) break;
      if (q.is_zero() || !alpha.precedes(beta)) continue;
      const MultiIndex rest = beta - alpha;
      const Rational factor = Rational(beta_fact) / Rational(rest.factorial());
      acc -= q * Polynomial::monomial(rest, factor);
    }
    rep.set(beta, acc * (1 / Rational(beta_fact)));
  }
  return rep;
}

DiffOpRep taylor_endo_coeffs(const std::vector<Polynomial>& f, unsigned d) {
  const std::size_t n = f.size();
  if (n == 0) throw DimensionError("endomorphism needs at least one component");
  std::vector<Polynomial> shift;
  for (std::size_t i = 0; i < n; ++i) {
    require_ring(n, f[i], "endomorphism component");
    shift.push_back(f[i] - Polynomial::variable(n, i));
  }
  DiffOpRep rep(n, d);
  for (const auto& alpha : MultiIndex::up_to_degree(n, d)) {
    Polynomial q = Polynomial::constant(n, 1 / Rational(alpha.factorial()));
    for (std::size_t i = 0; i < n; ++i)
      if (alpha[i]) q = q * power(shift[i], alpha[i]);
    rep.set(alpha, std::move(q));
  }
  return rep;
}

DiffOpRep localize_at(const DiffOpRep& rep, std::span<const Rational> a) {
  if (a.size() != rep.nvars()) throw DimensionError("localization point of the wrong dimension");
  DiffOpRep out(rep.nvars(), rep.degree());
  for (const auto& [alpha, q] : rep.coefficients()) out.set(alpha, Polynomial::constant(rep.nvars(), q(a)));
  return out;
}

Operator to_operator(const DiffOpRep& rep) {
  std::vector<Operator> parts;
  for (const auto& [alpha, q] : rep.coefficients()) {
    if (q.is_zero()) continue;
    parts.push_back(compose(Operator::mul(q), Operator::diff(alpha)));
  }
  if (parts.empty()) return Operator::zero(rep.nvars());
  return sum(std::move(parts));
}

std::string to_string(const DiffOpRep& rep) {
  std::string out;
  for (const auto& [alpha, q] : rep.coefficients()) {
    if (q.is_zero()) continue;
    out += "q(";
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(alpha[i]);
    }
    out += ") = " + to_string(q) + "\n";
  }
  return out.empty() ? "zero operator\n" : out;
}

// ---------------------------------------------------------------- global verdicts

GlobalCheck global_preserver_check(const DiffOpRep& rep, const DomainSet& s, unsigned m) {
  if (!rep.constant_coefficients()) throw Error("global preserver check needs constant coefficients");
  if (rep.nvars() != s.dimension()) throw DimensionError("operator and domain dimensions differ");
  std::map<MultiIndex, Rational> values;
  for (const auto& [alpha, q] : rep.coefficients()) values[alpha] = Rational(alpha.factorial()) * q.constant_term();
  MomentSequence seq(rep.nvars(), rep.degree(), std::move(values));
  MomentVerdict verdict = moment_check(seq, s, m);
  const bool origin = s.contains(Point(s.dimension(), Rational(0)));
  return {std::move(seq), std::move(verdict), origin};
}

LocalScan local_preserver_scan(const DiffOpRep& rep, const std::vector<Point>& points, unsigned m) {
  LocalScan out;
  const DomainSet whole = DomainSet::real_space(rep.nvars());
  if (rep.nvars() == 1 && rep.degree() >= 2) {
    const Polynomial& q0 = rep.coefficient(MultiIndex{0});
    const Polynomial& q1 = rep.coefficient(MultiIndex{1});
    const Polynomial q2 = rep.coefficient(MultiIndex{2}) * Rational(2);
    const std::vector<std::pair<std::string, Polynomial>> conditions = {
        {"q_0 >= 0", q0}, {"2 q_2 >= 0", q2}, {"2 q_0 q_2 - q_1^2 >= 0", q0 * q2 - q1 * q1}};
    for (const auto& [label, g] : conditions) {
      const NonnegVerdict v = nonneg_on(g, whole);
      if (v.is_falsified()) {
        out.refuted = true;
        out.point = v.witness;
        out.reason = label + " fails at " + to_string(std::span<const Rational>(v.witness));
        return out;
      }
    }
  }
  for (const auto& a : points) {
    ++out.points_checked;
    const GlobalCheck g = global_preserver_check(localize_at(rep, a), whole, m);
    if (g.verdict.refuted()) {
      out.refuted = true;
      out.point = a;
      out.reason = "localized operator at " + to_string(std::span<const Rational>(a)) + ": " + to_string(g.verdict);
      return out;
    }
  }
  return out;
}

OrderVerdict finite_order_verdict(const DiffOpRep& rep, bool asserted_finite_order) {
  const unsigned order = rep.order();
  return {order, order == rep.degree() && rep.degree() > 0, asserted_finite_order && order >= 1};
}

Operator translate_conjugate(const Operator& op, std::span<const Rational> a) {
  const std::size_t n = op.nvars();
  if (a.size() != n) throw DimensionError("translation of the wrong dimension");
  std::vector<Polynomial> plus, minus;
  for (std::size_t i = 0; i < n; ++i) {
    plus.push_back(Polynomial::variable(n, i) + Polynomial::constant(n, a[i]));
    minus.push_back(Polynomial::variable(n, i) - Polynomial::constant(n, a[i]));
  }
  return compose(Operator::endo(std::move(minus)), compose(op, Operator::endo(std::move(plus))));
}

}  // namespace posop
