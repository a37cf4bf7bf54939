#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace posop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in polynomial rings with different variable counts.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// The requested computation is outside the supported class (e.g. a
/// multivariate preimage, a bare differential node without adjoint).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Not enough moments / coefficients for the requested order.
class InsufficientOrderError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        message_(what),
        position_(position) {}

  std::size_t position() const { return position_; }
  const std::string& message() const { return message_; }

  /// The same error for a fragment that starts `offset` bytes into a
  /// larger input.
  ParseError shifted(std::size_t offset) const { return ParseError(message_, position_ + offset); }

 private:
  std::string message_;
  std::size_t position_;
};

}  // namespace posop
