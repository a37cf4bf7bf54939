#include "posop/domain.hpp"

#include "posop/errors.hpp"
#include "posop/text.hpp"

namespace posop {

bool Bound::contains(const Rational& x) const {
  const bool above = lo_closed ? lo <= x : lo < x;
  const bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

bool Bound::empty() const {
  if (lo > hi) return true;
  if (lo == hi) return !(lo_closed && hi_closed);
  return false;
}

Cell Cell::closed(std::span<const Interval> box) {
  Cell c;
  for (const auto& iv : box) c.axes.push_back({iv.lo, iv.hi, true, true});
  return c;
}

Cell Cell::closed(const Interval& interval) { return closed(std::span<const Interval>(&interval, 1)); }

bool Cell::contains(std::span<const Rational> x) const {
  if (x.size() != axes.size()) throw DimensionError("point and cell dimensions differ");
  for (std::size_t i = 0; i < axes.size(); ++i)
    if (!axes[i].contains(x[i])) return false;
  return true;
}

bool Cell::empty() const {
  for (const auto& b : axes)
    if (b.empty()) return true;
  return false;
}

std::optional<Cell> Cell::intersect(const Cell& other) const {
  if (other.axes.size() != axes.size()) throw DimensionError("cell dimensions differ");
  Cell out;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const Bound& a = axes[i];
    const Bound& b = other.axes[i];
    Bound c;
    if (a.lo > b.lo) {
      c.lo = a.lo;
      c.lo_closed = a.lo_closed;
    } else if (b.lo > a.lo) {
      c.lo = b.lo;
      c.lo_closed = b.lo_closed;
    } else {
      c.lo = a.lo;
      c.lo_closed = a.lo_closed && b.lo_closed;
    }
    if (a.hi < b.hi) {
      c.hi = a.hi;
      c.hi_closed = a.hi_closed;
    } else if (b.hi < a.hi) {
      c.hi = b.hi;
      c.hi_closed = b.hi_closed;
    } else {
      c.hi = a.hi;
      c.hi_closed = a.hi_closed && b.hi_closed;
    }
    if (c.empty()) return std::nullopt;
    out.axes.push_back(c);
  }
  return out;
}

std::string to_string(const Cell& cell) {
  std::string out;
  for (std::size_t i = 0; i < cell.axes.size(); ++i) {
    const Bound& b = cell.axes[i];
    if (i) out += "x";
    out += b.lo_closed ? "[" : "(";
    out += b.lo.get_str() + "," + b.hi.get_str();
    out += b.hi_closed ? "]" : ")";
  }
  return out;
}

Cell parse_cell(std::string_view text) {
  text::Cursor cur(text);
  Cell out;
  do {
    Bound b;
    if (cur.consume('[')) b.lo_closed = true;
    else if (cur.consume('(')) b.lo_closed = false;
    else cur.fail("expected '[' or '('");
    b.lo = cur.signed_rational();
    cur.expect(',');
    b.hi = cur.signed_rational();
    if (cur.consume(']')) b.hi_closed = true;
    else if (cur.consume(')')) b.hi_closed = false;
    else cur.fail("expected ']' or ')'");
    if (b.lo > b.hi) cur.fail("interval with lower end above upper end");
    out.axes.push_back(b);
  } while (cur.consume('x'));
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  return out;
}

// ---------------------------------------------------------------- DomainSet

DomainSet DomainSet::interval(const Rational& a, const Rational& b) {
  if (!(a < b)) throw Error("interval needs a < b");
  return DomainSet(IntervalSet{{a, b}});
}

DomainSet DomainSet::box(std::vector<Interval> axes) {
  if (axes.empty()) throw Error("box needs at least one axis");
  for (const auto& iv : axes)
    if (!(iv.lo < iv.hi)) throw Error("box axis needs lo < hi");
  if (axes.size() == 1) return interval(axes[0].lo, axes[0].hi);
  return DomainSet(BoxSet{std::move(axes)});
}

DomainSet DomainSet::half_line(const Rational& c) { return DomainSet(HalfLine{c}); }
DomainSet DomainSet::real_line() { return DomainSet(RealLine{}); }

DomainSet DomainSet::real_space(std::size_t n) {
  if (n == 0) throw Error("R^0 is not supported");
  if (n == 1) return real_line();
  return DomainSet(RealSpace{n});
}

std::size_t DomainSet::dimension() const {
  if (auto* b = std::get_if<BoxSet>(&v_)) return b->axes.size();
  if (auto* r = std::get_if<RealSpace>(&v_)) return r->n;
  return 1;
}

bool DomainSet::compact() const {
  return std::holds_alternative<IntervalSet>(v_) || std::holds_alternative<BoxSet>(v_);
}

bool DomainSet::contains(std::span<const Rational> x) const {
  if (x.size() != dimension()) throw DimensionError("point dimension does not match domain");
  if (auto* i = std::get_if<IntervalSet>(&v_)) return i->interval.contains(x[0]);
  if (auto* b = std::get_if<BoxSet>(&v_)) {
    for (std::size_t k = 0; k < x.size(); ++k)
      if (!b->axes[k].contains(x[k])) return false;
    return true;
  }
  if (auto* h = std::get_if<HalfLine>(&v_)) return x[0] >= h->start;
  return true;
}

std::vector<Interval> DomainSet::axes() const {
  if (auto* i = std::get_if<IntervalSet>(&v_)) return {i->interval};
  if (auto* b = std::get_if<BoxSet>(&v_)) return b->axes;
  throw UnsupportedError("domain " + to_string(*this) + " is not compact");
}

Cell DomainSet::as_cell() const { return Cell::closed(axes()); }

std::optional<Rational> DomainSet::lower() const {
  if (auto* i = std::get_if<IntervalSet>(&v_)) return i->interval.lo;
  if (auto* h = std::get_if<HalfLine>(&v_)) return h->start;
  return std::nullopt;
}

std::optional<Rational> DomainSet::upper() const {
  if (auto* i = std::get_if<IntervalSet>(&v_)) return i->interval.hi;
  return std::nullopt;
}

std::vector<Polynomial> DomainSet::defining_polynomials() const {
  const std::size_t n = dimension();
  std::vector<Polynomial> out;
  if (compact()) {
    const auto ax = axes();
    for (std::size_t k = 0; k < n; ++k) {
      const Polynomial x = Polynomial::variable(n, k);
      out.push_back(x - Polynomial::constant(n, ax[k].lo));
      out.push_back(Polynomial::constant(n, ax[k].hi) - x);
    }
  } else if (auto* h = std::get_if<HalfLine>(&v_)) {
    out.push_back(Polynomial::variable(1, 0) - Polynomial::constant(1, h->start));
  }
  return out;
}

bool DomainSet::operator==(const DomainSet& other) const { return to_string(*this) == to_string(other); }

std::string to_string(const DomainSet& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DomainSet::IntervalSet>) {
          return "[" + v.interval.lo.get_str() + "," + v.interval.hi.get_str() + "]";
        } else if constexpr (std::is_same_v<T, DomainSet::BoxSet>) {
          std::string out;
          for (std::size_t k = 0; k < v.axes.size(); ++k) {
            if (k) out += "x";
            out += "[" + v.axes[k].lo.get_str() + "," + v.axes[k].hi.get_str() + "]";
          }
          return out;
        } else if constexpr (std::is_same_v<T, DomainSet::HalfLine>) {
          return "[" + v.start.get_str() + ",inf)";
        } else if constexpr (std::is_same_v<T, DomainSet::RealLine>) {
          return "R";
        } else {
          return "R^" + std::to_string(v.n);
        }
      },
      s.variant());
}

DomainSet parse_domain(std::string_view input) {
  text::Cursor cur(input);
  if (cur.consume_word("R")) {
    if (cur.consume('^')) {
      const unsigned n = cur.unsigned_integer();
      if (!cur.at_end()) cur.fail("unexpected trailing input");
      if (n == 0) cur.fail("R^0 is not supported");
      return DomainSet::real_space(n);
    }
    if (!cur.at_end()) cur.fail("unexpected trailing input");
    return DomainSet::real_line();
  }
  std::vector<Interval> axes;
  do {
    cur.expect('[');
    const Rational lo = cur.signed_rational();
    cur.expect(',');
    if (cur.consume_word("inf")) {
      cur.expect(')');
      if (!axes.empty() || !cur.at_end()) cur.fail("half lines are one-dimensional");
      return DomainSet::half_line(lo);
    }
    const Rational hi = cur.signed_rational();
    cur.expect(']');
    if (!(lo < hi)) cur.fail("interval needs lower end below upper end");
    axes.push_back({lo, hi});
  } while (cur.consume('x'));
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  return DomainSet::box(std::move(axes));
}

}  // namespace posop
