#pragma once

#include <string>
#include <string_view>

#include "z2rank/gf2_matrix.hpp"
#include "z2rank/text_scanner.hpp"

namespace z2rank {

/// Reads one matrix in the "<rows> <cols>" + bit-row format from the current scanner position.
inline Gf2Matrix parse_matrix(TextScanner& in) {
  const std::size_t rows = in.next_count("row count");
  const std::size_t cols = in.next_count("column count");
  Gf2Matrix m(rows, cols);
  if (cols == 0) return m;  // rows are empty lines
  for (std::size_t i = 0; i < rows; ++i) {
    const auto tok = in.next("matrix row");
    if (tok.text.size() != cols)
      throw ParseError("row " + std::to_string(i) + " has " + std::to_string(tok.text.size()) +
                           " entries, expected " + std::to_string(cols),
                       tok.line, tok.column);
    for (std::size_t j = 0; j < cols; ++j) {
      const char c = tok.text[j];
      if (c == '1') {
        m.set(i, j, true);
      } else if (c != '0') {
        throw ParseError("expected '0' or '1'", tok.line, tok.column + j);
      }
    }
  }
  return m;
}

inline Gf2Matrix parse_matrix(std::string_view text) {
  TextScanner in(text);
  Gf2Matrix m = parse_matrix(in);
  in.expect_end();
  return m;
}

}  // namespace z2rank
