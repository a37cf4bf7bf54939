#include "posop/text.hpp"

#include <cctype>

#include "posop/errors.hpp"

namespace posop::text {

void Cursor::skip_ws() {
  while (pos_ < input_.size() && std::isspace(static_cast<unsigned char>(input_[pos_]))) ++pos_;
}

bool Cursor::at_end() {
  skip_ws();
  return pos_ >= input_.size();
}

char Cursor::peek() {
  skip_ws();
  return pos_ < input_.size() ? input_[pos_] : '\0';
}

bool Cursor::consume(char c) {
  if (peek() == c && !at_end()) {
    ++pos_;
    return true;
  }
  return false;
}

void Cursor::expect(char c) {
  if (!consume(c)) fail(std::string("expected '") + c + "'");
}

bool Cursor::consume_word(std::string_view word) {
  skip_ws();
  if (input_.substr(pos_, word.size()) != word) return false;
  const std::size_t after = pos_ + word.size();
  if (after < input_.size()) {
    const auto c = static_cast<unsigned char>(input_[after]);
    if (std::isalnum(c) || c == '_') return false;
  }
  pos_ = after;
  return true;
}

void Cursor::expect_word(std::string_view word) {
  if (!consume_word(word)) fail("expected '" + std::string(word) + "'");
}

std::string Cursor::identifier() {
  skip_ws();
  const std::size_t start = pos_;
  if (pos_ < input_.size() &&
      (std::isalpha(static_cast<unsigned char>(input_[pos_])) || input_[pos_] == '_')) {
    ++pos_;
    while (pos_ < input_.size() &&
           (std::isalnum(static_cast<unsigned char>(input_[pos_])) || input_[pos_] == '_'))
      ++pos_;
  }
  return std::string(input_.substr(start, pos_ - start));
}

unsigned Cursor::unsigned_integer() {
  skip_ws();
  const std::size_t start = pos_;
  unsigned long value = 0;
  while (pos_ < input_.size() && std::isdigit(static_cast<unsigned char>(input_[pos_]))) {
    value = value * 10 + static_cast<unsigned>(input_[pos_] - '0');
    if (value > 1'000'000) fail("integer too large");
    ++pos_;
  }
  if (start == pos_) fail("expected integer");
  return static_cast<unsigned>(value);
}

Rational Cursor::unsigned_rational() {
  skip_ws();
  const std::size_t start = pos_;
  auto digits = [&] {
    const std::size_t s = pos_;
    while (pos_ < input_.size() && std::isdigit(static_cast<unsigned char>(input_[pos_]))) ++pos_;
    return pos_ > s;
  };
  if (!digits()) fail("expected number");
  // A slash directly followed by digits belongs to the literal.
  if (pos_ + 1 < input_.size() && input_[pos_] == '/' &&
      std::isdigit(static_cast<unsigned char>(input_[pos_ + 1]))) {
    ++pos_;
    digits();
  }
  try {
    return parse_rational(input_.substr(start, pos_ - start));
  } catch (const ParseError& e) {
    throw ParseError("malformed number", start);
  }
}

Rational Cursor::signed_rational() {
  if (consume('-')) return -unsigned_rational();
  consume('+');
  return unsigned_rational();
}

std::string_view Cursor::balanced_until(std::string_view stops) {
  skip_ws();
  const std::size_t start = pos_;
  int depth = 0;
  while (pos_ < input_.size()) {
    const char c = input_[pos_];
    if (depth == 0 && stops.find(c) != std::string_view::npos) break;
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') {
      if (depth == 0) break;
      --depth;
    }
    ++pos_;
  }
  return input_.substr(start, pos_ - start);
}

void Cursor::fail(const std::string& message) const { throw ParseError(message, pos_); }

std::vector<Piece> split_top_level(std::string_view text, char sep) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (depth == 0 && c == sep) {
      out.push_back({start, text.substr(start, i - start)});
      start = i + 1;
    }
  }
  out.push_back({start, text.substr(start)});
  return out;
}

}  // namespace posop::text
