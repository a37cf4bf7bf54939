#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "posop/errors.hpp"
#include "posop/rational.hpp"

namespace posop::text {

/// Whitespace-skipping cursor shared by the polynomial, domain, measure and
/// operator grammars. Errors carry the byte offset into the original input.
class Cursor {
 public:
  explicit Cursor(std::string_view input) : input_(input) {}

  void skip_ws();
  bool at_end();
  char peek();
  std::size_t position() const { return pos_; }
  std::string_view rest() const { return input_.substr(pos_); }

  bool consume(char c);
  void expect(char c);
  bool consume_word(std::string_view word);
  void expect_word(std::string_view word);

  /// Identifier made of [A-Za-z_][A-Za-z0-9_]*; empty if none.
  std::string identifier();
  /// Unsigned rational literal `12` or `12/5`.
  Rational unsigned_rational();
  /// Optionally signed rational literal.
  Rational signed_rational();
  unsigned unsigned_integer();

  /// Returns the text up to (not including) the matching close bracket of
  /// the current nesting level, stopping at any of `stops` at depth 0.
  std::string_view balanced_until(std::string_view stops);

  [[noreturn]] void fail(const std::string& message) const;

  /// Runs a parser on a fragment taken from this input at `start`, moving
  /// its error positions into this input's coordinates.
  template <class F>
  static auto at_offset(std::size_t start, F&& parse) {
    try {
      return parse();
    } catch (const ParseError& e) {
      throw e.shifted(start);
    }
  }

 private:
  std::string_view input_;
  std::size_t pos_ = 0;
};

struct Piece {
  std::size_t offset;
  std::string_view text;
};

/// Splits at `sep` occurring outside brackets.
std::vector<Piece> split_top_level(std::string_view text, char sep);

}  // namespace posop::text
