#include "posop/measure.hpp"

#include <algorithm>

#include "posop/bernstein.hpp"
#include "posop/errors.hpp"
#include "posop/univariate.hpp"

namespace posop {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got)
    throw DimensionError(std::string(what) + ": expected " + std::to_string(expected) + " variables, got " +
                         std::to_string(got));
}

/// int over the box of p dlambda, term by term.
Rational integrate_box(const Polynomial& p, std::span<const Interval> box) {
  Rational total = 0;
  for (const auto& [alpha, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < box.size(); ++i) {
      const unsigned a = alpha[i] + 1;
      term *= (pow(box[i].hi, a) - pow(box[i].lo, a)) / Rational(a);
    }
    total += term;
  }
  return total;
}

std::vector<Interval> hull_union(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].lo = std::min(out[i].lo, b[i].lo);
    out[i].hi = std::max(out[i].hi, b[i].hi);
  }
  return out;
}

std::vector<Interval> hull_of_points(const std::vector<Atom>& atoms) {
  std::vector<Interval> out;
  for (const auto& a : atoms) {
    if (out.empty()) {
      for (const auto& x : a.point) out.push_back({x, x});
      continue;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i].lo = std::min(out[i].lo, a.point[i]);
      out[i].hi = std::max(out[i].hi, a.point[i]);
    }
  }
  return out;
}

Point apply_map(const std::vector<Polynomial>& f, const Point& x) {
  Point y;
  y.reserve(f.size());
  for (const auto& fi : f) y.push_back(fi(x));
  return y;
}

}  // namespace

// ---------------------------------------------------------------- construction

Measure Measure::dirac(Point x) {
  if (x.empty()) throw DimensionError("Dirac measure needs a point with at least one coordinate");
  return atomic({{std::move(x), Rational(1)}});
}

Measure Measure::atomic(std::vector<Atom> atoms) {
  if (atoms.empty()) throw Error("atomic measure needs at least one atom");
  const std::size_t n = atoms.front().point.size();
  if (n == 0) throw DimensionError("atoms need at least one coordinate");
  for (const auto& a : atoms) require_dim(n, a.point.size(), "atom");
  return Measure(std::make_shared<const MeasureNode>(MeasureNode{AtomicNode{std::move(atoms)}}), n);
}

Measure Measure::lebesgue(std::vector<Interval> box, Polynomial density) {
  if (box.empty()) throw DimensionError("Lebesgue measure needs a box");
  for (const auto& iv : box)
    if (!(iv.lo < iv.hi)) throw Error("Lebesgue box needs lo < hi on every axis");
  require_dim(box.size(), density.nvars(), "density");
  const std::size_t n = box.size();
  return Measure(std::make_shared<const MeasureNode>(MeasureNode{LebesgueNode{std::move(box), std::move(density)}}), n);
}

Measure Measure::lebesgue(const Interval& interval) {
  return lebesgue(std::vector<Interval>{interval}, Polynomial::constant(1, 1));
}

Measure Measure::zero(std::size_t nvars) { return scalar_mul(0, dirac(Point(nvars, Rational(0)))); }

Measure scale_by_poly(const Polynomial& f, const Measure& mu) {
  require_dim(mu.dimension(), f.nvars(), "scaling polynomial");
  return Measure(std::make_shared<const MeasureNode>(MeasureNode{ScaleNode{f, mu}}), mu.dimension());
}

Measure pushforward(const std::vector<Polynomial>& f, const Measure& mu) {
  if (f.empty()) throw DimensionError("pushforward needs at least one component");
  for (const auto& fi : f) require_dim(mu.dimension(), fi.nvars(), "pushforward component");
  return Measure(std::make_shared<const MeasureNode>(MeasureNode{PushNode{f, mu}}), f.size());
}

Measure sum(std::vector<Measure> parts) {
  if (parts.empty()) throw Error("sum of no measures");
  const std::size_t n = parts.front().dimension();
  for (const auto& m : parts) require_dim(n, m.dimension(), "summand");
  if (parts.size() == 1) return parts.front();
  return Measure(std::make_shared<const MeasureNode>(MeasureNode{SumNode{std::move(parts)}}), n);
}

Measure scalar_mul(const Rational& c, const Measure& mu) {
  return Measure(std::make_shared<const MeasureNode>(MeasureNode{ScalarNode{c, mu}}), mu.dimension());
}

// ---------------------------------------------------------------- integration

Rational integrate(const Measure& mu, const Polynomial& p) {
  require_dim(mu.dimension(), p.nvars(), "integrand");
  return std::visit(
      Overloaded{
          [&](const AtomicNode& n) {
            Rational s = 0;
            for (const auto& a : n.atoms) s += a.weight * p(a.point);
            return s;
          },
          [&](const LebesgueNode& n) { return integrate_box(n.density * p, n.box); },
          [&](const ScaleNode& n) { return integrate(n.inner, n.f * p); },
          [&](const PushNode& n) { return integrate(n.inner, compose(p, n.f)); },
          [&](const SumNode& n) {
            Rational s = 0;
            for (const auto& m : n.parts) s += integrate(m, p);
            return s;
          },
          [&](const ScalarNode& n) { return n.c == 0 ? Rational(0) : Rational(n.c * integrate(n.inner, p)); },
      },
      mu.node().v);
}

namespace {

/// int over f^{-1}(A) of q dmu for a one-dimensional non-atomic mu.
Rational integrate_preimage(const Measure& inner, const std::vector<Polynomial>& f, const Polynomial& q,
                            const Cell& a) {
  const auto hull = support_hull(inner);
  if (!hull) return 0;
  const Interval h = (*hull)[0];
  std::vector<Rational> breaks{h.lo, h.hi};
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (const Rational& c : {a.axes[i].lo, a.axes[i].hi}) {
      const univariate::UPoly g(f[i] - Polynomial::constant(1, c));
      if (g.degree() <= 0) continue;
      const auto roots = univariate::rational_roots(g, h.lo, h.hi);
      if (!roots.all_rational)
        throw UnsupportedError("preimage of " + to_string(a) + " under " + to_string(f[i]) +
                               " has an irrational boundary point");
      breaks.insert(breaks.end(), roots.rational.begin(), roots.rational.end());
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  auto inside = [&](const Rational& t) { return a.contains(apply_map(f, Point{t})); };
  Rational total = 0;
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    const Rational& t = breaks[k];
    if (inside(t)) total += integrate_over(inner, q, Cell{{Bound{t, t, true, true}}});
    if (k + 1 < breaks.size()) {
      const Rational& u = breaks[k + 1];
      if (inside((t + u) / 2)) total += integrate_over(inner, q, Cell{{Bound{t, u, false, false}}});
    }
  }
  return total;
}

}  // namespace

Rational integrate_over(const Measure& mu, const Polynomial& p, const Cell& a) {
  require_dim(mu.dimension(), p.nvars(), "integrand");
  require_dim(mu.dimension(), a.dimension(), "set");
  return std::visit(
      Overloaded{
          [&](const AtomicNode& n) {
            Rational s = 0;
            for (const auto& at : n.atoms)
              if (a.contains(at.point)) s += at.weight * p(at.point);
            return s;
          },
          [&](const LebesgueNode& n) -> Rational {
            const auto cut = Cell::closed(n.box).intersect(a);
            if (!cut) return 0;
            std::vector<Interval> box;
            for (const auto& b : cut->axes) {
              if (b.lo == b.hi) return 0;
              box.push_back({b.lo, b.hi});
            }
            return integrate_box(n.density * p, box);
          },
          [&](const ScaleNode& n) { return integrate_over(n.inner, n.f * p, a); },
          [&](const PushNode& n) -> Rational {
            const Polynomial q = compose(p, n.f);
            if (auto atoms = to_atomic(n.inner)) {
              Rational s = 0;
              for (const auto& at : *atoms)
                if (a.contains(apply_map(n.f, at.point))) s += at.weight * q(at.point);
              return s;
            }
            if (n.inner.dimension() != 1)
              throw UnsupportedError("unsupported preimage: pushforward of a non-atomic measure in " +
                                     std::to_string(n.inner.dimension()) + " variables");
            return integrate_preimage(n.inner, n.f, q, a);
          },
          [&](const SumNode& n) {
            Rational s = 0;
            for (const auto& m : n.parts) s += integrate_over(m, p, a);
            return s;
          },
          [&](const ScalarNode& n) { return n.c == 0 ? Rational(0) : Rational(n.c * integrate_over(n.inner, p, a)); },
      },
      mu.node().v);
}

Rational measure_of_set(const Measure& mu, const Cell& a) {
  return integrate_over(mu, Polynomial::constant(mu.dimension(), 1), a);
}

// ---------------------------------------------------------------- structure

std::optional<std::vector<Atom>> to_atomic(const Measure& mu) {
  std::optional<std::vector<Atom>> raw = std::visit(
      Overloaded{
          [](const AtomicNode& n) -> std::optional<std::vector<Atom>> { return n.atoms; },
          [](const LebesgueNode&) -> std::optional<std::vector<Atom>> { return std::nullopt; },
          [](const ScaleNode& n) -> std::optional<std::vector<Atom>> {
            auto inner = to_atomic(n.inner);
            if (!inner) return std::nullopt;
            for (auto& a : *inner) a.weight *= n.f(a.point);
            return inner;
          },
          [](const PushNode& n) -> std::optional<std::vector<Atom>> {
            auto inner = to_atomic(n.inner);
            if (!inner) return std::nullopt;
            for (auto& a : *inner) a.point = apply_map(n.f, a.point);
            return inner;
          },
          [](const SumNode& n) -> std::optional<std::vector<Atom>> {
            std::vector<Atom> all;
            for (const auto& m : n.parts) {
              auto part = to_atomic(m);
              if (!part) return std::nullopt;
              all.insert(all.end(), part->begin(), part->end());
            }
            return all;
          },
          [](const ScalarNode& n) -> std::optional<std::vector<Atom>> {
            if (n.c == 0) return std::vector<Atom>{};
            auto inner = to_atomic(n.inner);
            if (!inner) return std::nullopt;
            for (auto& a : *inner) a.weight *= n.c;
            return inner;
          },
      },
      mu.node().v);
  if (!raw) return std::nullopt;
  std::map<Point, Rational> merged;
  for (const auto& a : *raw) merged[a.point] += a.weight;
  std::vector<Atom> out;
  for (const auto& [x, w] : merged)
    if (w != 0) out.push_back({x, w});
  return out;
}

std::optional<std::vector<Interval>> support_hull(const Measure& mu) {
  if (auto atoms = to_atomic(mu)) {
    if (atoms->empty()) return std::nullopt;
    return hull_of_points(*atoms);
  }
  using Hull = std::optional<std::vector<Interval>>;
  return std::visit(
      Overloaded{
          [](const AtomicNode&) -> Hull { return std::nullopt; },
          [](const LebesgueNode& n) -> Hull {
            if (n.density.is_zero()) return std::nullopt;
            return n.box;
          },
          [](const ScaleNode& n) -> Hull {
            if (n.f.is_zero()) return std::nullopt;
            return support_hull(n.inner);
          },
          [](const PushNode& n) -> Hull {
            const auto inner = support_hull(n.inner);
            if (!inner) return std::nullopt;
            std::vector<Interval> out;
            for (const auto& fi : n.f) {
              const BernsteinPatch patch(fi, *inner);
              out.push_back({patch.min(), patch.max()});
            }
            return out;
          },
          [](const SumNode& n) -> Hull {
            Hull out;
            for (const auto& m : n.parts) {
              const auto h = support_hull(m);
              if (!h) continue;
              out = out ? hull_union(*out, *h) : *h;
            }
            return out;
          },
          [](const ScalarNode& n) -> Hull {
            if (n.c == 0) return std::nullopt;
            return support_hull(n.inner);
          },
      },
      mu.node().v);
}

bool certified_nonnegative(const Measure& mu, const Budget& budget) {
  if (auto atoms = to_atomic(mu)) {
    return std::all_of(atoms->begin(), atoms->end(), [](const Atom& a) { return a.weight >= 0; });
  }
  return std::visit(
      Overloaded{
          [](const AtomicNode&) { return false; },
          [&](const LebesgueNode& n) { return nonneg_on(n.density, DomainSet::box(n.box), budget).is_certified(); },
          [&](const ScaleNode& n) {
            if (!certified_nonnegative(n.inner, budget)) return false;
            const auto hull = support_hull(n.inner);
            if (!hull) return true;
            for (const auto& iv : *hull)
              if (!(iv.lo < iv.hi)) return false;
            return nonneg_on(n.f, DomainSet::box(*hull), budget).is_certified();
          },
          [&](const PushNode& n) { return certified_nonnegative(n.inner, budget); },
          [&](const SumNode& n) {
            return std::all_of(n.parts.begin(), n.parts.end(),
                               [&](const Measure& m) { return certified_nonnegative(m, budget); });
          },
          [&](const ScalarNode& n) { return n.c == 0 || (n.c > 0 && certified_nonnegative(n.inner, budget)); },
      },
      mu.node().v);
}

bool support_within(const Measure& mu, const DomainSet& s) {
  require_dim(s.dimension(), mu.dimension(), "measure");
  if (auto atoms = to_atomic(mu)) {
    return std::all_of(atoms->begin(), atoms->end(), [&](const Atom& a) { return s.contains(a.point); });
  }
  const auto hull = support_hull(mu);
  if (!hull) return true;
  Point lo, hi;
  for (const auto& iv : *hull) {
    lo.push_back(iv.lo);
    hi.push_back(iv.hi);
  }
  if (s.compact()) return s.contains(lo) && s.contains(hi);
  return s.contains(lo);
}

namespace {

struct DensityPiece {
  std::vector<Interval> box;
  Polynomial density;
};

struct DensityForm {
  std::vector<Atom> atoms;
  std::vector<DensityPiece> pieces;
};

std::optional<DensityForm> density_form(const Measure& mu) {
  using R = std::optional<DensityForm>;
  return std::visit(
      Overloaded{
          [](const AtomicNode& n) -> R { return DensityForm{n.atoms, {}}; },
          [](const LebesgueNode& n) -> R { return DensityForm{{}, {{n.box, n.density}}}; },
          [](const ScaleNode& n) -> R {
            auto inner = density_form(n.inner);
            if (!inner) return std::nullopt;
            for (auto& a : inner->atoms) a.weight *= n.f(a.point);
            for (auto& piece : inner->pieces) piece.density = n.f * piece.density;
            return inner;
          },
          [](const PushNode& n) -> R {
            auto atoms = to_atomic(n.inner);
            if (!atoms) return std::nullopt;
            for (auto& a : *atoms) a.point = apply_map(n.f, a.point);
            return DensityForm{std::move(*atoms), {}};
          },
          [](const SumNode& n) -> R {
            DensityForm out;
            for (const auto& m : n.parts) {
              auto part = density_form(m);
              if (!part) return std::nullopt;
              out.atoms.insert(out.atoms.end(), part->atoms.begin(), part->atoms.end());
              out.pieces.insert(out.pieces.end(), part->pieces.begin(), part->pieces.end());
            }
            return out;
          },
          [](const ScalarNode& n) -> R {
            auto inner = density_form(n.inner);
            if (!inner) return std::nullopt;
            for (auto& a : inner->atoms) a.weight *= n.c;
            for (auto& piece : inner->pieces) piece.density *= n.c;
            return inner;
          },
      },
      mu.node().v);
}

}  // namespace

std::optional<bool> measures_equal(const Measure& a, const Measure& b) {
  if (a.dimension() != b.dimension()) return false;
  const auto form = density_form(sum({a, scalar_mul(-1, b)}));
  if (!form) return std::nullopt;
  std::map<Point, Rational> atoms;
  for (const auto& at : form->atoms) atoms[at.point] += at.weight;
  for (const auto& [x, w] : atoms)
    if (w != 0) return false;
  // On every elementary box of the common grid the densities must cancel.
  const std::size_t n = a.dimension();
  std::vector<std::vector<Rational>> cuts(n);
  for (const auto& piece : form->pieces)
    for (std::size_t i = 0; i < n; ++i) {
      cuts[i].push_back(piece.box[i].lo);
      cuts[i].push_back(piece.box[i].hi);
    }
  if (form->pieces.empty()) return true;
  for (auto& c : cuts) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    Polynomial total(n);
    for (const auto& piece : form->pieces) {
      bool covers = true;
      for (std::size_t i = 0; i < n && covers; ++i)
        covers = piece.box[i].lo <= cuts[i][idx[i]] && cuts[i][idx[i] + 1] <= piece.box[i].hi;
      if (covers) total += piece.density;
    }
    if (!total.is_zero()) return false;
    std::size_t i = n;
    while (i > 0 && ++idx[i - 1] + 1 == cuts[i - 1].size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return true;
}

// ---------------------------------------------------------------- text

namespace {

std::string point_text(const Point& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ",";
    out += x[i].get_str();
  }
  return out;
}

std::string box_text(const std::vector<Interval>& box) {
  std::string out;
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (i) out += "x";
    out += "[" + box[i].lo.get_str() + "," + box[i].hi.get_str() + "]";
  }
  return out;
}

Point parse_point(text::Cursor& cur) {
  Point x{cur.signed_rational()};
  while (cur.consume(',')) x.push_back(cur.signed_rational());
  return x;
}

Polynomial poly_at(text::Cursor& cur, std::string_view stops, std::size_t nvars) {
  cur.skip_ws();
  const std::size_t at = cur.position();
  const std::string_view t = cur.balanced_until(stops);
  return text::Cursor::at_offset(at, [&] { return parse_polynomial(t, nvars); });
}

/// Polynomial text parsed later, once the ring is known.
struct Deferred {
  std::size_t offset;
  std::string_view text;
};

Deferred defer_until(text::Cursor& cur, std::string_view stops) {
  cur.skip_ws();
  const std::size_t at = cur.position();
  return {at, cur.balanced_until(stops)};
}

Polynomial resolve(const Deferred& d, std::size_t nvars) {
  return text::Cursor::at_offset(d.offset, [&] { return parse_polynomial(d.text, nvars); });
}

}  // namespace

std::string to_string(const Measure& mu) {
  return std::visit(
      Overloaded{
          [](const AtomicNode& n) -> std::string {
            if (n.atoms.size() == 1 && n.atoms[0].weight == 1) return "dirac(" + point_text(n.atoms[0].point) + ")";
            std::string out = "atoms(";
            for (std::size_t i = 0; i < n.atoms.size(); ++i) {
              if (i) out += ", ";
              out += "(" + point_text(n.atoms[i].point) + "; " + n.atoms[i].weight.get_str() + ")";
            }
            return out + ")";
          },
          [](const LebesgueNode& n) -> std::string {
            return "lebesgue(" + box_text(n.box) + "; density=" + to_string(n.density) + ")";
          },
          [](const ScaleNode& n) -> std::string { return "scale(" + to_string(n.f) + "; " + to_string(n.inner) + ")"; },
          [](const PushNode& n) -> std::string {
            std::string out = "push(";
            for (std::size_t i = 0; i < n.f.size(); ++i) {
              if (i) out += ", ";
              out += to_string(n.f[i]);
            }
            return out + "; " + to_string(n.inner) + ")";
          },
          [](const SumNode& n) -> std::string {
            std::string out = "sum(";
            for (std::size_t i = 0; i < n.parts.size(); ++i) {
              if (i) out += ", ";
              out += to_string(n.parts[i]);
            }
            return out + ")";
          },
          [](const ScalarNode& n) -> std::string {
            if (n.c == -1) return "neg(" + to_string(n.inner) + ")";
            return "times(" + n.c.get_str() + "; " + to_string(n.inner) + ")";
          },
      },
      mu.node().v);
}

Measure parse_measure(text::Cursor& cur) {
  cur.skip_ws();
  const std::size_t start = cur.position();
  const std::string word = cur.identifier();
  if (word.empty()) cur.fail("expected a measure");
  cur.expect('(');
  Measure out = Measure::zero(1);
  if (word == "dirac") {
    out = Measure::dirac(parse_point(cur));
  } else if (word == "atoms") {
    std::vector<Atom> atoms;
    do {
      cur.expect('(');
      Point x = parse_point(cur);
      cur.expect(';');
      const Rational w = cur.signed_rational();
      cur.expect(')');
      if (!atoms.empty() && atoms.front().point.size() != x.size()) cur.fail("atoms of different dimensions");
      atoms.push_back({std::move(x), w});
    } while (cur.consume(','));
    out = Measure::atomic(std::move(atoms));
  } else if (word == "lebesgue") {
    std::vector<Interval> box;
    do {
      cur.expect('[');
      const Rational lo = cur.signed_rational();
      cur.expect(',');
      const Rational hi = cur.signed_rational();
      cur.expect(']');
      if (!(lo < hi)) cur.fail("Lebesgue box needs lower end below upper end");
      box.push_back({lo, hi});
    } while (cur.consume('x'));
    Polynomial density = Polynomial::constant(box.size(), 1);
    if (cur.consume(';')) {
      cur.expect_word("density");
      cur.expect('=');
      density = poly_at(cur, ")", box.size());
    }
    out = Measure::lebesgue(std::move(box), std::move(density));
  } else if (word == "scale") {
    const Deferred f = defer_until(cur, ";");
    cur.expect(';');
    const Measure inner = parse_measure(cur);
    out = scale_by_poly(resolve(f, inner.dimension()), inner);
  } else if (word == "push") {
    const Deferred all = defer_until(cur, ";");
    cur.expect(';');
    const Measure inner = parse_measure(cur);
    std::vector<Polynomial> f;
    for (const auto& piece : text::split_top_level(all.text, ','))
      f.push_back(resolve({all.offset + piece.offset, piece.text}, inner.dimension()));
    out = pushforward(f, inner);
  } else if (word == "sum") {
    std::vector<Measure> parts{parse_measure(cur)};
    while (cur.consume(',')) {
      parts.push_back(parse_measure(cur));
      if (parts.back().dimension() != parts.front().dimension()) cur.fail("summands of different dimensions");
    }
    out = sum(std::move(parts));
  } else if (word == "neg") {
    out = scalar_mul(-1, parse_measure(cur));
  } else if (word == "times") {
    const Rational c = cur.signed_rational();
    cur.expect(';');
    out = scalar_mul(c, parse_measure(cur));
  } else {
    throw ParseError("unknown measure '" + word + "'", start);
  }
  cur.expect(')');
  return out;
}

Measure parse_measure(std::string_view input) {
  text::Cursor cur(input);
  Measure mu = parse_measure(cur);
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  return mu;
}

// ---------------------------------------------------------------- moments

MomentSequence::MomentSequence(std::size_t nvars, unsigned order, std::map<MultiIndex, Rational> values)
    : nvars_(nvars), order_(order), values_(std::move(values)) {
  for (const auto& alpha : MultiIndex::up_to_degree(nvars_, order_))
    if (!values_.count(alpha)) throw InsufficientOrderError("moment sequence is missing an entry of order <= " +
                                                            std::to_string(order_));
}

MomentSequence MomentSequence::univariate(std::vector<Rational> values) {
  if (values.empty()) throw InsufficientOrderError("empty moment sequence");
  std::map<MultiIndex, Rational> m;
  for (unsigned k = 0; k < values.size(); ++k) m[MultiIndex{k}] = values[k];
  return MomentSequence(1, static_cast<unsigned>(values.size() - 1), std::move(m));
}

const Rational& MomentSequence::at(const MultiIndex& alpha) const {
  if (alpha.size() != nvars_) throw DimensionError("moment index of wrong length");
  if (alpha.degree() > order_)
    throw InsufficientOrderError("moment of order " + std::to_string(alpha.degree()) + " requested, sequence has order " +
                                 std::to_string(order_));
  return values_.at(alpha);
}

Rational MomentSequence::functional(const Polynomial& p) const {
  require_dim(nvars_, p.nvars(), "functional argument");
  Rational s = 0;
  for (const auto& [alpha, c] : p.terms()) s += c * at(alpha);
  return s;
}

MomentSequence moments(const Measure& mu, unsigned order) {
  std::map<MultiIndex, Rational> values;
  for (const auto& alpha : MultiIndex::up_to_degree(mu.dimension(), order))
    values[alpha] = integrate(mu, Polynomial::monomial(alpha));
  return MomentSequence(mu.dimension(), order, std::move(values));
}

MomentSequence parse_moment_sequence(std::string_view input) {
  text::Cursor cur(input);
  std::vector<Rational> values{cur.signed_rational()};
  while (cur.consume(',')) values.push_back(cur.signed_rational());
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  return MomentSequence::univariate(std::move(values));
}

}  // namespace posop
