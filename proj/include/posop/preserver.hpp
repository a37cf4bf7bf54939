#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posop/domain.hpp"
#include "posop/nonneg.hpp"
#include "posop/operator.hpp"

namespace posop {

struct PreserverOptions {
  Budget budget;
  std::size_t tests = 200;
  unsigned max_degree = 6;
  std::uint64_t seed = 20240101;
};

/// Outcome of check_preserver. A falsified verdict carries p >= 0 on S and
/// x in S with op(p)(x) = value < 0.
struct PreserverVerdict {
  enum class Kind { certified, falsified, no_counterexample };

  Kind kind = Kind::no_counterexample;
  std::string reason;
  std::optional<Polynomial> p;
  Point x;
  Rational value;
  std::size_t tests_run = 0;
};

std::string to_string(const PreserverVerdict& v);

/// Structural certificate for op(N(S)) in N(S), or nullopt when none of the
/// rules applies. The string explains the certificate.
std::optional<std::string> structural_certificate(const Operator& op, const DomainSet& s, const Budget& budget = {});

/// Certificate branch first, then a seeded search over polynomials that are
/// nonnegative on S by construction.
PreserverVerdict check_preserver(const Operator& op, const DomainSet& s, const PreserverOptions& options = {});

/// The deterministic test family used by check_preserver: 1, the domain
/// certificates, then seeded squares, sums of squares, certificate times
/// square and shifted even powers.
std::vector<Polynomial> test_polynomials(const DomainSet& s, const PreserverOptions& options);

enum class Classification { yes, no, unknown };

struct PositivityClass {
  Classification kind = Classification::unknown;
  std::string reason;
  std::optional<Point> zero;
};

/// For a certified preserver on compact S (or closed S in one variable):
/// positivity preserving iff op(1) > 0 on S.
PositivityClass classify_positivity(const Operator& op, const DomainSet& s, const Budget& budget = {});

struct EllipticityClass {
  Classification kind = Classification::unknown;
  /// +1 when op, -1 when -op is the positivity preserver.
  int sign = 0;
  std::string reason;
};

/// On connected S: elliptic iff op or -op preserves positivity.
EllipticityClass classify_ellipticity(const Operator& op, const DomainSet& s, const Budget& budget = {});

}  // namespace posop
