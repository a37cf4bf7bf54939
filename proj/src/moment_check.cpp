#include "posop/moment_check.hpp"

#include <numeric>

#include "posop/errors.hpp"

namespace posop {

void SymMatrix::set(std::size_t i, std::size_t j, const Rational& v) {
  a_[i * n_ + j] = v;
  a_[j * n_ + i] = v;
}

Rational SymMatrix::quadratic_form(std::span<const Rational> v) const {
  if (v.size() != n_) throw DimensionError("vector length does not match matrix size");
  Rational s = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) s += v[i] * (*this)(i, j) * v[j];
  }
  return s;
}

std::string to_string(const SymMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ", ";
    out += "[";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ", ";
      out += m(i, j).get_str();
    }
    out += "]";
  }
  return out + "]";
}

SymMatrix localizing_matrix(const MomentSequence& r, const Polynomial& g, unsigned m) {
  if (g.nvars() != r.nvars()) throw DimensionError("localizing polynomial lives in the wrong ring");
  const auto basis = MultiIndex::up_to_degree(r.nvars(), m);
  const int e = std::max(g.total_degree(), 0);
  if (2 * m + static_cast<unsigned>(e) > r.order())
    throw InsufficientOrderError("level " + std::to_string(m) + " with a weight of degree " + std::to_string(e) +
                                 " needs moments up to order " + std::to_string(2 * m + e) + ", have " +
                                 std::to_string(r.order()));
  SymMatrix out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      Rational s = 0;
      for (const auto& [alpha, c] : g.terms()) s += c * r.at(alpha + basis[i] + basis[j]);
      out.set(i, j, s);
    }
  }
  return out;
}

SymMatrix hankel(const MomentSequence& r, unsigned m) {
  if (r.nvars() != 1) throw DimensionError("Hankel matrix of a multivariate sequence");
  return localizing_matrix(r, Polynomial::constant(1, 1), m);
}

namespace {

/// Scales a nonzero rational vector to coprime integers.
std::vector<Rational> primitive(std::vector<Rational> v) {
  Integer den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  Integer g = 0;
  for (auto& x : v) {
    x *= den;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (g != 0)
    for (auto& x : v) x /= g;
  return v;
}

struct Elimination {
  std::size_t pivot;
  Rational value;
  std::vector<std::pair<std::size_t, Rational>> row;  // (k, A_pk) for still-active k
};

}  // namespace

PsdResult is_psd_exact(const SymMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  std::vector<bool> active(n, true);
  std::vector<Elimination> steps;
  PsdResult out;

  auto finish_negative = [&](std::vector<Rational> v) {
    // v is supported on active indices; fill in eliminated ones backwards.
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      Rational s = 0;
      for (const auto& [k, apk] : it->row) s += apk * v[k];
      v[it->pivot] = -s / it->value;
    }
    out.psd = false;
    out.certificate = primitive(std::move(v));
    out.value = m.quadratic_form(out.certificate);
    if (!(out.value < 0)) throw Error("internal: PSD refutation certificate is not negative");
    return out;
  };

  for (;;) {
    std::size_t neg = n, pos = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      if (a[i][i] < 0 && neg == n) neg = i;
      if (a[i][i] > 0 && pos == n) pos = i;
    }
    if (neg < n) {
      std::vector<Rational> v(n, Rational(0));
      v[neg] = 1;
      return finish_negative(std::move(v));
    }
    if (pos == n) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!active[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          if (!active[j] || a[i][j] == 0) continue;
          std::vector<Rational> v(n, Rational(0));
          v[i] = 1;
          v[j] = a[i][j] > 0 ? -1 : 1;
          return finish_negative(std::move(v));
        }
      }
      return out;
    }
    const std::size_t p = pos;
    const Rational d = a[p][p];
    Elimination step{p, d, {}};
    active[p] = false;
    for (std::size_t k = 0; k < n; ++k)
      if (active[k]) step.row.emplace_back(k, a[p][k]);
    for (const auto& [i, aip] : step.row) {
      if (aip == 0) continue;
      for (const auto& [j, ajp] : step.row) a[i][j] -= aip * ajp / d;
    }
    out.pivots.push_back(d);
    steps.push_back(std::move(step));
  }
}

MomentVerdict moment_check(const MomentSequence& r, const DomainSet& s, unsigned m) {
  if (r.nvars() != s.dimension()) throw DimensionError("moment sequence and domain dimensions differ");
  if (r.order() < 2 * m)
    throw InsufficientOrderError("level " + std::to_string(m) + " needs moments up to order " +
                                 std::to_string(2 * m) + ", have " + std::to_string(r.order()));
  const std::size_t n = s.dimension();
  std::vector<std::pair<std::string, Polynomial>> weights;
  weights.emplace_back(n == 1 ? "hankel" : "moment", Polynomial::constant(n, 1));
  if (n == 1) {
    const auto lo = s.lower();
    const auto hi = s.upper();
    const Polynomial x = Polynomial::variable(1, 0);
    if (lo && hi) {
      weights.emplace_back("", (x - Polynomial::constant(1, *lo)) * (Polynomial::constant(1, *hi) - x));
    } else if (lo) {
      weights.emplace_back("", x - Polynomial::constant(1, *lo));
    }
  } else {
    for (auto& g : s.defining_polynomials()) weights.emplace_back("", std::move(g));
  }
  for (auto& [label, g] : weights)
    if (label.empty()) label = "localizer " + to_string(g);

  MomentVerdict out;
  out.necessary_only = n > 1;
  for (unsigned k = 0; k <= m; ++k) {
    for (const auto& [label, g] : weights) {
      const unsigned e = static_cast<unsigned>(std::max(g.total_degree(), 0));
      if (2 * k + e > r.order()) continue;
      MatrixCheck check{label, k, localizing_matrix(r, g, k), {}};
      check.result = is_psd_exact(check.matrix);
      const bool failed = !check.result.psd;
      out.checks.push_back(check);
      if (failed) {
        out.kind = MomentVerdict::Kind::refuted;
        out.order = k;
        out.certificate = check.result.certificate;
        out.value = check.result.value;
        out.failed_matrix = label;
        return out;
      }
    }
  }
  out.kind = MomentVerdict::Kind::consistent;
  out.order = m;
  return out;
}

std::string to_string(const MomentVerdict& v) {
  std::string out;
  if (v.refuted()) {
    out = "refuted at order " + std::to_string(v.order) + " (" + v.failed_matrix + ", certificate " +
          to_string(std::span<const Rational>(v.certificate)) + ", value " + v.value.get_str() + ")";
  } else {
    out = "consistent up to order " + std::to_string(v.order);
  }
  if (v.necessary_only) out += " [necessary conditions only]";
  return out;
}

}  // namespace posop
