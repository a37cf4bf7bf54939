#include "posop/nonneg.hpp"

#include <algorithm>
#include <queue>

#include "posop/bernstein.hpp"
#include "posop/errors.hpp"
#include "posop/univariate.hpp"

namespace posop {

namespace {

using univariate::RootCell;
using univariate::UPoly;

void check_dimension(const Polynomial& p, const DomainSet& s) {
  if (p.nvars() != s.dimension())
    throw DimensionError("polynomial in " + std::to_string(p.nvars()) + " variables tested on a " +
                         std::to_string(s.dimension()) + "-dimensional domain");
}

/// A compact interval containing every sign change of q inside S.
Interval search_interval(const UPoly& q, const DomainSet& s) {
  const Rational b = univariate::cauchy_bound(q);
  const auto lo = s.lower();
  const auto hi = s.upper();
  if (lo && hi) return {*lo, *hi};
  if (lo) return {*lo, std::max(*lo, b) + 1};
  return {-b - 1, b + 1};
}

/// One rational point strictly between consecutive roots (or between an end
/// of [lo, hi] and the nearest root), preferring the simplest rational.
struct Region {
  Rational lo;
  Rational hi;
  bool lo_open;
  bool hi_open;
};

Rational sample(const Region& r) {
  if (r.lo == r.hi) return r.lo;
  Rational x = simplest_between(r.lo, r.hi);
  if ((r.lo_open && x == r.lo) || (r.hi_open && x == r.hi)) x = (r.lo + r.hi) / 2;
  return x;
}

struct RootScan {
  std::vector<RootCell> roots;
  std::vector<Rational> samples;  // one per root-free region, increasing
};

RootScan scan(const UPoly& q, const Interval& iv) {
  RootScan out;
  out.roots = univariate::isolate_roots(q, iv.lo, iv.hi);
  Rational start = iv.lo;
  bool start_open = false;
  for (const auto& cell : out.roots) {
    if (cell.exact) {
      if (!(start == cell.lo && !start_open)) out.samples.push_back(sample({start, cell.lo, start_open, true}));
      start = cell.lo;
      start_open = true;
    } else {
      out.samples.push_back(sample({start, cell.lo, start_open, false}));
      start = cell.hi;
      start_open = false;
    }
  }
  if (!(start == iv.hi && start_open)) out.samples.push_back(sample({start, iv.hi, start_open, false}));
  return out;
}

NonnegVerdict univariate_nonneg(const Polynomial& p, const DomainSet& s) {
  const UPoly up(p);
  if (up.degree() <= 0) {
    if (up.is_zero() || up[0] >= 0) return NonnegVerdict::certified();
    const Point x{s.lower().value_or(s.upper().value_or(Rational(0)))};
    return NonnegVerdict::falsified(x, up[0]);
  }
  const UPoly q = univariate::square_free_part(up);
  const RootScan rs = scan(q, search_interval(q, s));
  for (const auto& x : rs.samples) {
    const Rational v = up(x);
    if (v < 0) return NonnegVerdict::falsified({x}, v);
  }
  return NonnegVerdict::certified();
}

PositivityVerdict univariate_positive(const Polynomial& p, const DomainSet& s) {
  const UPoly up(p);
  PositivityVerdict out;
  if (up.degree() <= 0) {
    if (up[0] > 0) {
      out.kind = PositivityVerdict::Kind::positive;
    } else {
      out.kind = PositivityVerdict::Kind::not_positive;
      out.witness = Point{s.lower().value_or(s.upper().value_or(Rational(0)))};
      out.value = up[0];
    }
    return out;
  }
  const UPoly q = univariate::square_free_part(up);
  const RootScan rs = scan(q, search_interval(q, s));
  std::vector<std::pair<Rational, Rational>> bad;
  for (const auto& x : rs.samples)
    if (up(x) < 0) bad.emplace_back(x, up(x));
  for (const auto& cell : rs.roots)
    if (auto r = univariate::rational_root_in(q, cell)) bad.emplace_back(*r, Rational(0));
  if (!bad.empty()) {
    const auto best = std::min_element(bad.begin(), bad.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.kind = PositivityVerdict::Kind::not_positive;
    out.witness = Point{best->first};
    out.value = best->second;
    return out;
  }
  if (!rs.roots.empty()) {
    out.kind = PositivityVerdict::Kind::not_positive;
    out.reason = "vanishes at an irrational point in (" + rs.roots.front().lo.get_str() + "," +
                 rs.roots.front().hi.get_str() + ")";
    return out;
  }
  out.kind = PositivityVerdict::Kind::positive;
  return out;
}

/// Breadth-first Bernstein subdivision. With strict = false looks for
/// p >= 0, otherwise for p > 0. Returns the lexicographically smallest
/// offending point of the first level that produces one.
struct BoxSearch {
  enum class Outcome { proven, refuted, exhausted };
  Outcome outcome;
  Point witness;
  Rational value;
  std::string reason;
};

BoxSearch box_search(const Polynomial& p, const std::vector<Interval>& box, bool strict, const Budget& budget) {
  std::vector<std::vector<Interval>> level{box};
  std::size_t processed = 0;
  for (unsigned depth = 0;; ++depth) {
    std::vector<std::vector<Interval>> next;
    std::optional<Point> best;
    Rational best_value;
    for (const auto& b : level) {
      for (const auto& x : corners_and_centre(b)) {
        const Rational v = p(x);
        const bool offends = strict ? v <= 0 : v < 0;
        if (offends && (!best || lex_less(x, *best))) {
          best = x;
          best_value = v;
        }
      }
      if (best) continue;
      const BernsteinPatch patch(p, b);
      const Rational m = patch.min();
      if (strict ? m > 0 : m >= 0) continue;
      auto [l, r] = bisect(b);
      next.push_back(std::move(l));
      next.push_back(std::move(r));
    }
    if (best) return {BoxSearch::Outcome::refuted, *best, best_value, {}};
    processed += level.size();
    if (next.empty()) return {BoxSearch::Outcome::proven, {}, 0, {}};
    if (depth + 1 > budget.max_depth || processed + next.size() > budget.max_boxes)
      return {BoxSearch::Outcome::exhausted, {}, 0,
              "subdivision budget exhausted after " + std::to_string(processed) + " boxes at depth " +
                  std::to_string(depth)};
    level = std::move(next);
  }
}

/// Deterministic probe points for R^n.
std::vector<Point> probe_points(std::size_t n) {
  static const std::vector<Rational> values = {0, 1, -1, Rational(1, 2), Rational(-1, 2), 2, -2,
                                               Rational(1, 3), Rational(-1, 3), 3, -3, 10, -10};
  std::size_t per_axis = values.size();
  auto total = [&](std::size_t k) {
    std::size_t t = 1;
    for (std::size_t i = 0; i < n; ++i) t *= k;
    return t;
  };
  while (per_axis > 2 && total(per_axis) > 20000) --per_axis;
  std::vector<Point> out;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    Point x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = values[idx[i]];
    out.push_back(std::move(x));
    std::size_t i = n;
    while (i > 0 && ++idx[i - 1] == per_axis) idx[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

}  // namespace

std::string to_string(const NonnegVerdict& v) {
  switch (v.kind) {
    case NonnegVerdict::Kind::certified: return "certified";
    case NonnegVerdict::Kind::falsified:
      return "falsified at " + to_string(std::span<const Rational>(v.witness)) + " with value " + v.value.get_str();
    case NonnegVerdict::Kind::unknown: return "unknown (" + v.reason + ")";
  }
  return {};
}

NonnegVerdict nonneg_on(const Polynomial& p, const DomainSet& s, const Budget& budget) {
  check_dimension(p, s);
  if (p.is_zero()) return NonnegVerdict::certified();
  if (s.univariate()) return univariate_nonneg(p, s);
  if (s.compact()) {
    const BoxSearch r = box_search(p, s.axes(), false, budget);
    switch (r.outcome) {
      case BoxSearch::Outcome::proven: return NonnegVerdict::certified();
      case BoxSearch::Outcome::refuted: return NonnegVerdict::falsified(r.witness, r.value);
      case BoxSearch::Outcome::exhausted: return NonnegVerdict::unknown(r.reason);
    }
  }
  std::optional<Point> best;
  Rational best_value;
  for (const auto& x : probe_points(s.dimension())) {
    const Rational v = p(x);
    if (v < 0 && (!best || lex_less(x, *best))) {
      best = x;
      best_value = v;
    }
  }
  if (best) return NonnegVerdict::falsified(*best, best_value);
  return NonnegVerdict::unknown("certification on " + to_string(s) + " is not supported; no negative sample found");
}

PositivityVerdict positive_on(const Polynomial& p, const DomainSet& s, const Budget& budget) {
  check_dimension(p, s);
  if (s.univariate()) return univariate_positive(p, s);
  if (!s.compact()) throw UnsupportedError("strict positivity on " + to_string(s) + " is not supported");
  PositivityVerdict out;
  const BoxSearch r = box_search(p, s.axes(), true, budget);
  switch (r.outcome) {
    case BoxSearch::Outcome::proven: out.kind = PositivityVerdict::Kind::positive; break;
    case BoxSearch::Outcome::refuted:
      out.kind = PositivityVerdict::Kind::not_positive;
      out.witness = r.witness;
      out.value = r.value;
      break;
    case BoxSearch::Outcome::exhausted:
      out.kind = PositivityVerdict::Kind::unknown;
      out.reason = r.reason;
      break;
  }
  return out;
}

// ---------------------------------------------------------------- sup norm

namespace {

Enclosure univariate_sup(const Polynomial& p, const Interval& iv, const Rational& eps) {
  const UPoly up(p);
  Enclosure out{abs(Rational(up(iv.lo))), abs(Rational(up(iv.lo)))};
  auto include = [&](const Rational& lo, const Rational& hi) {
    out.lo = std::max(out.lo, lo);
    out.hi = std::max(out.hi, hi);
  };
  const Rational at_hi = abs(Rational(up(iv.hi)));
  include(at_hi, at_hi);
  const UPoly dp = up.derivative();
  if (dp.degree() <= 0) return out;
  const UPoly q = univariate::square_free_part(dp);
  for (RootCell cell : univariate::isolate_roots(q, iv.lo, iv.hi)) {
    if (cell.exact) {
      const Rational v = abs(Rational(up(cell.lo)));
      include(v, v);
      continue;
    }
    if (auto r = univariate::rational_root_in(q, cell)) {
      const Rational v = abs(Rational(up(*r)));
      include(v, v);
      continue;
    }
    for (;;) {
      const auto [mn, mx] = univariate::bernstein_range(up, cell.lo, cell.hi);
      const Rational hi = std::max(abs(mn), abs(mx));
      const Rational lo = abs(Rational(up((cell.lo + cell.hi) / 2)));
      if (hi - lo <= eps) {
        include(lo, hi);
        break;
      }
      cell = univariate::refine(q, cell, (cell.hi - cell.lo) / 2);
    }
  }
  return out;
}

struct Pending {
  Rational upper;
  std::vector<Interval> box;
  bool operator<(const Pending& o) const { return upper < o.upper; }
};

Enclosure box_sup(const Polynomial& p, const std::vector<Interval>& box, const Rational& eps, const Budget& budget) {
  Rational lower = 0;
  auto push = [&](std::priority_queue<Pending>& queue, std::vector<Interval> b) {
    for (const auto& x : corners_and_centre(b)) lower = std::max(lower, abs(Rational(p(x))));
    const BernsteinPatch patch(p, b);
    queue.push({std::max(abs(patch.min()), abs(patch.max())), std::move(b)});
  };
  std::priority_queue<Pending> queue;
  push(queue, box);
  for (std::size_t boxes = 1;; ++boxes) {
    const Pending top = queue.top();
    if (top.upper - lower <= eps) return {lower, top.upper};
    if (boxes > budget.max_boxes) throw Error("sup norm: subdivision budget exhausted");
    queue.pop();
    auto [l, r] = bisect(top.box);
    push(queue, std::move(l));
    push(queue, std::move(r));
  }
}

}  // namespace

Enclosure sup_norm(const Polynomial& p, const DomainSet& s, const Rational& eps, const Budget& budget) {
  check_dimension(p, s);
  if (!s.compact()) throw UnsupportedError("sup norm needs a compact domain, got " + to_string(s));
  if (eps <= 0) throw Error("sup norm tolerance must be positive");
  if (p.is_zero()) return {0, 0};
  if (s.univariate()) return univariate_sup(p, s.axes()[0], eps);
  return box_sup(p, s.axes(), eps, budget);
}

}  // namespace posop
