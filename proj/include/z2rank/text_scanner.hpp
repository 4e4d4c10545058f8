#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "z2rank/errors.hpp"

namespace z2rank {

/// Whitespace-separated token reader that remembers line/column positions for diagnostics.
class TextScanner {
 public:
  struct Token {
    std::string_view text;
    std::size_t line = 0;
    std::size_t column = 0;
  };

  explicit TextScanner(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  Token next(std::string_view expecting) {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input, expected " +
                                               std::string(expecting), line_, column_);
    Token t{{}, line_, column_};
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) advance();
    t.text = text_.substr(start, pos_ - start);
    return t;
  }

  std::size_t next_count(std::string_view what) {
    const Token t = next(what);
    std::size_t v = 0;
    if (t.text.empty()) throw ParseError("expected " + std::string(what), t.line, t.column);
    for (char c : t.text) {
      if (c < '0' || c > '9')
        throw ParseError("expected non-negative integer for " + std::string(what) + ", got '" +
                             std::string(t.text) + "'",
                         t.line, t.column);
      v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
  }

  void expect(std::string_view literal) {
    const Token t = next("'" + std::string(literal) + "'");
    if (t.text != literal)
      throw ParseError("expected '" + std::string(literal) + "', got '" + std::string(t.text) + "'",
                       t.line, t.column);
  }

  void expect_end() {
    skip_space();
    if (pos_ < text_.size()) throw ParseError("trailing content", line_, column_);
  }

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) advance();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace z2rank
