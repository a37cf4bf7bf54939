#include "posop/preserver.hpp"

#include <random>

#include "posop/errors.hpp"
#include "posop/measure.hpp"

namespace posop {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::optional<std::string> endo_certificate(const EndoOp& o, const DomainSet& s, const Budget& budget) {
  const std::size_t n = s.dimension();
  std::vector<std::pair<Polynomial, std::string>> needed;
  if (s.compact()) {
    const auto axes = s.axes();
    for (std::size_t j = 0; j < n; ++j) {
      needed.emplace_back(o.f[j] - Polynomial::constant(n, axes[j].lo),
                          to_string(o.f[j]) + " >= " + axes[j].lo.get_str());
      needed.emplace_back(Polynomial::constant(n, axes[j].hi) - o.f[j],
                          to_string(o.f[j]) + " <= " + axes[j].hi.get_str());
    }
  } else if (auto lo = s.lower()) {
    needed.emplace_back(o.f[0] - Polynomial::constant(1, *lo), to_string(o.f[0]) + " >= " + lo->get_str());
  } else {
    return "every polynomial map sends " + to_string(s) + " into itself";
  }
  std::string why = "image inside S:";
  for (const auto& [g, label] : needed) {
    if (!nonneg_on(g, s, budget).is_certified()) return std::nullopt;
    why += " " + label + ";";
  }
  why.pop_back();
  return why + " on S";
}

}  // namespace

std::optional<std::string> structural_certificate(const Operator& op, const DomainSet& s, const Budget& budget) {
  if (op.nvars() != s.dimension()) throw DimensionError("operator and domain dimensions differ");
  using R = std::optional<std::string>;
  return std::visit(
      Overloaded{
          [&](const MulOp& o) -> R {
            if (!nonneg_on(o.f, s, budget).is_certified()) return std::nullopt;
            return "multiplier " + to_string(o.f) + " is nonnegative on S";
          },
          [&](const EndoOp& o) -> R { return endo_certificate(o, s, budget); },
          [&](const DiffOp& o) -> R {
            if (!o.alpha.is_zero()) return std::nullopt;
            return std::string("identity");
          },
          [&](const RankOp& o) -> R {
            for (const auto& t : o.terms) {
              if (!nonneg_on(t.f, s, budget).is_certified()) return std::nullopt;
              if (!certified_nonnegative(t.nu, budget) || !support_within(t.nu, s)) return std::nullopt;
            }
            return "finite rank with nonnegative f_i and nonnegative measures supported in S";
          },
          [&](const SumOp& o) -> R {
            std::string why = "sum of certified parts [";
            for (std::size_t i = 0; i < o.parts.size(); ++i) {
              const auto part = structural_certificate(o.parts[i], s, budget);
              if (!part) return std::nullopt;
              why += (i ? "; " : "") + *part;
            }
            return why + "]";
          },
          [&](const ComposeOp& o) -> R {
            const auto a = structural_certificate(o.outer, s, budget);
            if (!a) return std::nullopt;
            const auto b = structural_certificate(o.inner, s, budget);
            if (!b) return std::nullopt;
            return "composition of certified parts [" + *a + "; " + *b + "]";
          },
          [&](const ScalarOp& o) -> R {
            if (o.c == 0) return std::string("zero operator");
            if (o.c < 0) {
              const auto* nested = std::get_if<ScalarOp>(&o.inner.node().v);
              if (!nested || nested->c >= 0) return std::nullopt;
              return structural_certificate(scalar_mul(o.c * nested->c, nested->inner), s, budget);
            }
            const auto inner = structural_certificate(o.inner, s, budget);
            if (!inner) return std::nullopt;
            return "positive multiple of [" + *inner + "]";
          },
      },
      op.node().v);
}

std::vector<Polynomial> test_polynomials(const DomainSet& s, const PreserverOptions& options) {
  const std::size_t n = s.dimension();
  std::vector<Polynomial> out{Polynomial::constant(n, 1)};
  std::vector<Polynomial> certs = s.defining_polynomials();
  if (n == 1 && s.compact()) certs.push_back(certs[0] * certs[1]);
  for (const auto& g : certs) out.push_back(g);

  std::mt19937_64 engine(options.seed);
  auto pick = [&](std::uint64_t bound) { return engine() % bound; };
  auto coefficient = [&] {
    const long num = static_cast<long>(pick(11)) - 5;
    const long den = static_cast<long>(pick(4)) + 1;
    return make_rational(num, den);
  };
  auto random_poly = [&](unsigned degree) {
    Polynomial p(n);
    for (const auto& alpha : MultiIndex::up_to_degree(n, degree))
      if (pick(3) != 0) p.add_term(alpha, coefficient());
    if (p.is_zero()) p = Polynomial::constant(n, 1);
    return p;
  };
  const unsigned half = std::max(1u, options.max_degree / 2);

  for (std::size_t k = 0; out.size() < options.tests; ++k) {
    Polynomial p(n);
    switch (k % 4) {
      case 0: {
        const Polynomial q = random_poly(static_cast<unsigned>(pick(half + 1)));
        p = q * q;
        break;
      }
      case 1: {
        const Polynomial q1 = random_poly(static_cast<unsigned>(pick(half + 1)));
        const Polynomial q2 = random_poly(static_cast<unsigned>(pick(half + 1)));
        p = q1 * q1 + q2 * q2;
        break;
      }
      case 2: {
        if (certs.empty()) {
          const Polynomial q = random_poly(static_cast<unsigned>(pick(half + 1)));
          p = q * q;
          break;
        }
        const Polynomial& g = certs[pick(certs.size())];
        const unsigned room = static_cast<unsigned>(std::max(0, static_cast<int>(options.max_degree) - g.total_degree())) / 2;
        const Polynomial q = random_poly(static_cast<unsigned>(pick(room + 1)));
        p = g * (q * q);
        break;
      }
      default: {
        const std::size_t j = pick(n);
        const Rational shift = make_rational(static_cast<long>(pick(17)) - 8, 4);
        const unsigned k2 = static_cast<unsigned>(pick(half)) + 1;
        p = power(Polynomial::variable(n, j) - Polynomial::constant(n, shift), 2 * k2);
        break;
      }
    }
    if (s.univariate() && !nonneg_on(p, s, options.budget).is_certified()) continue;
    out.push_back(std::move(p));
  }
  return out;
}

PreserverVerdict check_preserver(const Operator& op, const DomainSet& s, const PreserverOptions& options) {
  PreserverVerdict out;
  if (auto why = structural_certificate(op, s, options.budget)) {
    out.kind = PreserverVerdict::Kind::certified;
    out.reason = *why;
    return out;
  }
  for (const auto& p : test_polynomials(s, options)) {
    ++out.tests_run;
    const NonnegVerdict v = nonneg_on(apply(op, p), s, options.budget);
    if (v.is_falsified()) {
      out.kind = PreserverVerdict::Kind::falsified;
      out.reason = "image of a polynomial nonnegative on S takes a negative value";
      out.p = p;
      out.x = v.witness;
      out.value = v.value;
      return out;
    }
  }
  out.kind = PreserverVerdict::Kind::no_counterexample;
  out.reason = "no structural certificate; no counterexample among " + std::to_string(out.tests_run) + " tests";
  return out;
}

std::string to_string(const PreserverVerdict& v) {
  switch (v.kind) {
    case PreserverVerdict::Kind::certified: return "certified preserver (" + v.reason + ")";
    case PreserverVerdict::Kind::falsified:
      return "falsified: p = " + to_string(*v.p) + ", x = " + to_string(std::span<const Rational>(v.x)) +
             ", value = " + v.value.get_str();
    case PreserverVerdict::Kind::no_counterexample: return "no counterexample found (" + v.reason + ")";
  }
  return {};
}

PositivityClass classify_positivity(const Operator& op, const DomainSet& s, const Budget& budget) {
  if (!s.compact() && !s.univariate())
    throw UnsupportedError("positivity classification needs a compact or one-dimensional domain");
  PositivityClass out;
  if (!structural_certificate(op, s, budget)) {
    out.reason = "operator has no structural preserver certificate on " + to_string(s);
    return out;
  }
  const Polynomial one = apply(op, Polynomial::constant(s.dimension(), 1));
  const PositivityVerdict v = positive_on(one, s, budget);
  switch (v.kind) {
    case PositivityVerdict::Kind::positive:
      out.kind = Classification::yes;
      out.reason = "op(1) = " + to_string(one) + " is positive on S";
      break;
    case PositivityVerdict::Kind::not_positive:
      out.kind = Classification::no;
      out.zero = v.witness;
      out.reason = "op(1) = " + to_string(one) + " is not positive on S" +
                   (v.witness ? " (value " + v.value.get_str() + " at " +
                                    to_string(std::span<const Rational>(*v.witness)) + ")"
                              : " (" + v.reason + ")");
      break;
    case PositivityVerdict::Kind::unknown: out.reason = v.reason; break;
  }
  return out;
}

EllipticityClass classify_ellipticity(const Operator& op, const DomainSet& s, const Budget& budget) {
  EllipticityClass out;
  for (const int sign : {1, -1}) {
    const Operator candidate = sign > 0 ? op : scalar_mul(-1, op);
    if (!structural_certificate(candidate, s, budget)) continue;
    const PositivityClass pc = classify_positivity(candidate, s, budget);
    out.kind = pc.kind;
    out.sign = pc.kind == Classification::yes ? sign : 0;
    out.reason = (sign > 0 ? "op: " : "-op: ") + pc.reason;
    return out;
  }
  const Polynomial one = apply(op, Polynomial::constant(s.dimension(), 1));
  if ((s.compact() || s.univariate()) &&
      positive_on(one, s, budget).kind == PositivityVerdict::Kind::not_positive &&
      positive_on(-one, s, budget).kind == PositivityVerdict::Kind::not_positive) {
    out.kind = Classification::no;
    out.reason = "op(1) = " + to_string(one) + " vanishes on the connected set S";
    return out;
  }
  out.reason = "neither op nor -op has a structural preserver certificate";
  return out;
}

}  // namespace posop
