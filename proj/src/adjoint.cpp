#include "posop/adjoint.hpp"

#include "posop/errors.hpp"

namespace posop {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

/// Incremental row echelon form over Q of a growing list of polynomials.
/// Every added polynomial is expressed in the basis formed by the
/// independent ones added so far.
class SpanBuilder {
 public:
  struct Result {
    bool is_new;
    /// p = sum coords[k] * basis[k] (after insertion when is_new).
    std::vector<Rational> coords;
  };

  Result add(const Polynomial& p) {
    Polynomial res = p;
    std::vector<Rational> comb(basis_.size(), Rational(0));
    while (!res.is_zero()) {
      const auto& [lead, c] = *res.terms().rbegin();
      auto it = rows_.find(lead);
      if (it == rows_.end()) break;
      const Rational factor = c / it->second.poly.terms().rbegin()->second;
      res -= it->second.poly * factor;
      for (std::size_t k = 0; k < it->second.comb.size(); ++k) comb[k] += factor * it->second.comb[k];
    }
    if (res.is_zero()) return {false, comb};
    const MultiIndex lead = res.terms().rbegin()->first;
    basis_.push_back(p);
    for (auto& [m, row] : rows_) row.comb.push_back(0);
    std::vector<Rational> w(basis_.size(), Rational(0));
    for (std::size_t k = 0; k < comb.size(); ++k) w[k] = -comb[k];
    w.back() = 1;
    rows_.emplace(lead, Row{std::move(res), std::move(w)});
    std::vector<Rational> coords(basis_.size(), Rational(0));
    coords.back() = 1;
    return {true, coords};
  }

  std::size_t rank() const { return basis_.size(); }
  const std::vector<Polynomial>& basis() const { return basis_; }

 private:
  struct Row {
    Polynomial poly;
    std::vector<Rational> comb;
  };
  std::map<MultiIndex, Row> rows_;
  std::vector<Polynomial> basis_;
};

/// Flattens an operator into pairs (f_i, nu_i) when its structure makes it
/// finite rank. An empty list is the zero operator.
std::optional<std::vector<Operator::RankTerm>> as_finite_rank(const Operator& op) {
  using R = std::optional<std::vector<Operator::RankTerm>>;
  return std::visit(
      Overloaded{
          [](const MulOp& o) -> R {
            if (o.f.is_zero()) return std::vector<Operator::RankTerm>{};
            return std::nullopt;
          },
          [](const EndoOp&) -> R { return std::nullopt; },
          [](const DiffOp&) -> R { return std::nullopt; },
          [](const RankOp& o) -> R { return o.terms; },
          [](const SumOp& o) -> R {
            std::vector<Operator::RankTerm> out;
            for (const auto& part : o.parts) {
              auto t = as_finite_rank(part);
              if (!t) return std::nullopt;
              out.insert(out.end(), t->begin(), t->end());
            }
            return out;
          },
          [](const ComposeOp& o) -> R {
            if (auto inner = as_finite_rank(o.inner)) {
              for (auto& t : *inner) t.f = apply(o.outer, t.f);
              return inner;
            }
            auto outer = as_finite_rank(o.outer);
            if (!outer) return std::nullopt;
            try {
              for (auto& t : *outer) t.nu = adjoint_apply(o.inner, t.nu);
            } catch (const UnsupportedError&) {
              return std::nullopt;
            }
            return outer;
          },
          [](const ScalarOp& o) -> R {
            if (o.c == 0) return std::vector<Operator::RankTerm>{};
            auto inner = as_finite_rank(o.inner);
            if (!inner) return std::nullopt;
            for (auto& t : *inner) t.nu = scalar_mul(o.c, t.nu);
            return inner;
          },
      },
      op.node().v);
}

/// The functionals of `terms` regrouped along the basis of `span`:
/// entry k is sum_i coords_i[k] nu_i.
std::vector<std::vector<std::pair<Rational, Measure>>> regroup(const std::vector<Operator::RankTerm>& terms,
                                                               SpanBuilder& span) {
  std::vector<std::vector<std::pair<Rational, Measure>>> out;
  for (const auto& t : terms) {
    const auto r = span.add(t.f);
    out.resize(span.rank());
    for (std::size_t k = 0; k < r.coords.size(); ++k)
      if (r.coords[k] != 0) out[k].emplace_back(r.coords[k], t.nu);
  }
  out.resize(span.rank());
  return out;
}

Measure combine(const std::vector<std::pair<Rational, Measure>>& parts, std::size_t n) {
  if (parts.empty()) return Measure::zero(n);
  std::vector<Measure> scaled;
  for (const auto& [c, nu] : parts) scaled.push_back(c == 1 ? nu : scalar_mul(c, nu));
  return sum(std::move(scaled));
}

}  // namespace

Measure adjoint_apply(const Operator& op, const Measure& mu) {
  if (mu.dimension() != op.nvars()) throw DimensionError("measure and operator dimensions differ");
  const std::size_t n = op.nvars();
  return std::visit(
      Overloaded{
          [&](const MulOp& o) { return scale_by_poly(o.f, mu); },
          [&](const EndoOp& o) { return pushforward(o.f, mu); },
          [&](const DiffOp& o) -> Measure {
            if (!o.alpha.is_zero()) throw UnsupportedError("no constructive adjoint for a differential node");
            return mu;
          },
          [&](const RankOp& o) {
            std::vector<Measure> parts;
            for (const auto& t : o.terms) {
              const Rational w = integrate(mu, t.f);
              if (w != 0) parts.push_back(w == 1 ? t.nu : scalar_mul(w, t.nu));
            }
            return parts.empty() ? Measure::zero(n) : sum(std::move(parts));
          },
          [&](const SumOp& o) {
            std::vector<Measure> parts;
            for (const auto& part : o.parts) parts.push_back(adjoint_apply(part, mu));
            return sum(std::move(parts));
          },
          [&](const ComposeOp& o) { return adjoint_apply(o.inner, adjoint_apply(o.outer, mu)); },
          [&](const ScalarOp& o) { return scalar_mul(o.c, adjoint_apply(o.inner, mu)); },
      },
      op.node().v);
}

Measure mu_x(const Operator& op, std::span<const Rational> x) {
  return adjoint_apply(op, Measure::dirac(Point(x.begin(), x.end())));
}

Rational star_A(const Operator& op, const Cell& a, std::span<const Rational> x) {
  return measure_of_set(mu_x(op, x), a);
}

Rational StepFunction::operator()(std::span<const Rational> x) const {
  Rational s = 0;
  for (const auto& [cell, r] : pieces)
    if (cell.contains(x)) s += r;
  return s;
}

bool StepFunction::disjoint() const {
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j)
      if (pieces[i].first.intersect(pieces[j].first)) return false;
  return true;
}

StepFunction step_approximation(const Polynomial& p, const Interval& interval, std::size_t cells) {
  if (p.nvars() != 1) throw DimensionError("step approximation needs a univariate polynomial");
  if (cells == 0) throw Error("step approximation needs at least one cell");
  StepFunction s;
  const Rational w = interval.width() / Rational(static_cast<unsigned long>(cells));
  for (std::size_t i = 0; i < cells; ++i) {
    const Rational l = interval.lo + w * Rational(static_cast<unsigned long>(i));
    const Rational r = i + 1 == cells ? interval.hi : l + w;
    const Rational mid = (l + r) / 2;
    s.pieces.push_back({Cell{{Bound{l, r, true, i + 1 == cells}}}, p(Point{mid})});
  }
  return s;
}

Rational step_integral(const Operator& op, const StepFunction& s, std::span<const Rational> x) {
  const Measure m = mu_x(op, x);
  Rational total = 0;
  for (const auto& [cell, r] : s.pieces)
    if (r != 0) total += r * measure_of_set(m, cell);
  return total;
}

FiniteRange finite_range_detect(const Operator& op, unsigned d) {
  FiniteRange out;
  const std::size_t n = op.nvars();
  SpanBuilder probe;
  for (unsigned k = 0; k <= d; ++k) {
    for (const auto& beta : MultiIndex::up_to_degree(n, k))
      if (beta.degree() == k) probe.add(apply(op, Polynomial::monomial(beta)));
    out.ranks.push_back(probe.rank());
  }

  if (auto terms = as_finite_rank(op)) {
    SpanBuilder span;
    const auto groups = regroup(*terms, span);
    for (std::size_t k = 0; k < span.rank(); ++k) {
      Polynomial f = span.basis()[k];
      Measure nu = combine(groups[k], n);
      if (f.terms().rbegin()->second < 0) {
        f = -f;
        nu = scalar_mul(-1, nu);
      }
      out.basis.push_back({std::move(f), std::move(nu)});
    }
    out.kind = FiniteRange::Kind::finite_rank;
    out.reason = "finite rank by structure, range basis of size " + std::to_string(out.basis.size());
    return out;
  }
  const bool growing = d == 0 || out.ranks[d] > out.ranks[d - 1];
  out.kind = growing ? FiniteRange::Kind::not_detected : FiniteRange::Kind::rank_stabilized;
  out.reason = std::string(growing ? "rank of monomial images still grows" : "rank of monomial images stabilized") +
               ": " + std::to_string(out.ranks.back()) + " at degree " + std::to_string(d);
  return out;
}

Polynomial star_A_polynomial(const FiniteRange& fr, const Cell& a) {
  if (fr.kind != FiniteRange::Kind::finite_rank) throw Error("no finite-rank basis available");
  Polynomial out(a.dimension());
  for (const auto& t : fr.basis) out += t.f * measure_of_set(t.nu, a);
  return out;
}

std::optional<bool> finite_rank_equal(const Operator& a, const Operator& b) {
  if (a.nvars() != b.nvars()) return false;
  const auto ta = as_finite_rank(a);
  const auto tb = as_finite_rank(b);
  if (!ta || !tb) return std::nullopt;
  SpanBuilder span;
  auto ga = regroup(*ta, span);
  auto gb = regroup(*tb, span);
  ga.resize(span.rank());
  for (std::size_t k = 0; k < span.rank(); ++k) {
    const auto eq = measures_equal(combine(ga[k], a.nvars()), combine(gb[k], a.nvars()));
    if (!eq || !*eq) return eq;
  }
  return true;
}

bool equal_on_degree(const Operator& a, const Operator& b, unsigned d) {
  if (a.nvars() != b.nvars()) return false;
  for (const auto& beta : MultiIndex::up_to_degree(a.nvars(), d)) {
    const Polynomial m = Polynomial::monomial(beta);
    if (apply(a, m) != apply(b, m)) return false;
  }
  return true;
}

}  // namespace posop
