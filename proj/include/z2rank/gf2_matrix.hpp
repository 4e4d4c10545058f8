#pragma once

/// Dense matrices over GF(2) with machine-word-packed rows.
///
/// Row i occupies `words_per_row()` consecutive 64-bit words; column j lives in
/// word j / 64 at bit j % 64 (least significant bit first). Bits at positions
/// >= cols() in the last word of a row are always zero, so whole-word
/// comparison and XOR are exact.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "z2rank/errors.hpp"

namespace z2rank {

class Gf2Matrix {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Gf2Matrix() = default;

  Gf2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + kWordBits - 1) / kWordBits),
        bits_(rows_ * stride_, 0) {}

  static Gf2Matrix zeros(std::size_t rows, std::size_t cols) { return Gf2Matrix(rows, cols); }

  static Gf2Matrix zeros(std::size_t n) { return Gf2Matrix(n, n); }

  static Gf2Matrix identity(std::size_t n) {
    Gf2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  /// All-ones matrix J.
  static Gf2Matrix ones(std::size_t rows, std::size_t cols) {
    Gf2Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m.set(i, j, true);
    return m;
  }

  static Gf2Matrix ones(std::size_t n) { return ones(n, n); }

  /// Builds a matrix from rows of '0'/'1' characters, e.g. {"011", "101", "110"}.
  static Gf2Matrix from_rows(std::initializer_list<std::string_view> rows) {
    return from_rows(std::vector<std::string_view>(rows));
  }

  static Gf2Matrix from_rows(const std::vector<std::string_view>& rows) {
    const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    Gf2Matrix m(rows.size(), cols);
    std::size_t i = 0;
    for (std::string_view r : rows) {
      if (r.size() != cols) throw StructuralError("from_rows: ragged row " + std::to_string(i));
      for (std::size_t j = 0; j < cols; ++j) {
        if (r[j] == '1') {
          m.set(i, j, true);
        } else if (r[j] != '0') {
          throw StructuralError("from_rows: expected '0' or '1'");
        }
      }
      ++i;
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return stride_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  bool get(std::size_t i, std::size_t j) const noexcept {
    return (bits_[i * stride_ + j / kWordBits] >> (j % kWordBits)) & 1U;
  }

  bool operator()(std::size_t i, std::size_t j) const noexcept { return get(i, j); }

  void set(std::size_t i, std::size_t j, bool value) noexcept {
    word_type& w = bits_[i * stride_ + j / kWordBits];
    const word_type mask = word_type{1} << (j % kWordBits);
    w = value ? (w | mask) : (w & ~mask);
  }

  void flip(std::size_t i, std::size_t j) noexcept {
    bits_[i * stride_ + j / kWordBits] ^= word_type{1} << (j % kWordBits);
  }

  std::span<const word_type> row(std::size_t i) const noexcept {
    return {bits_.data() + i * stride_, stride_};
  }

  std::span<word_type> row(std::size_t i) noexcept { return {bits_.data() + i * stride_, stride_}; }

  /// row(dst) += row(src)
  void add_row(std::size_t dst, std::size_t src) noexcept {
    word_type* d = bits_.data() + dst * stride_;
    const word_type* s = bits_.data() + src * stride_;
    for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
  }

  void swap_rows(std::size_t a, std::size_t b) noexcept {
    if (a == b) return;
    std::swap_ranges(bits_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                     bits_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                     bits_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
  }

  /// col(dst) += col(src)
  void add_col(std::size_t dst, std::size_t src) noexcept {
    for (std::size_t i = 0; i < rows_; ++i)
      if (get(i, src)) flip(i, dst);
  }

  void swap_cols(std::size_t a, std::size_t b) noexcept {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) {
      const bool x = get(i, a);
      set(i, a, get(i, b));
      set(i, b, x);
    }
  }

  /// Symmetric elementary operation: row(dst) += row(src), then col(dst) += col(src).
  void add_symmetric(std::size_t dst, std::size_t src) noexcept {
    add_row(dst, src);
    add_col(dst, src);
  }

  void swap_symmetric(std::size_t a, std::size_t b) noexcept {
    swap_rows(a, b);
    swap_cols(a, b);
  }

  bool row_is_zero(std::size_t i) const noexcept {
    const auto r = row(i);
    return std::all_of(r.begin(), r.end(), [](word_type w) { return w == 0; });
  }

  bool is_zero() const noexcept {
    return std::all_of(bits_.begin(), bits_.end(), [](word_type w) { return w == 0; });
  }

  std::size_t popcount() const noexcept {
    std::size_t n = 0;
    for (word_type w : bits_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  std::span<const word_type> words() const noexcept { return bits_; }

  friend bool operator==(const Gf2Matrix& a, const Gf2Matrix& b) noexcept {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.bits_ == b.bits_;
  }

  /// Lexicographic order on (rows, cols, row-major bit string). Used for deterministic tie-breaks.
  friend bool lex_less(const Gf2Matrix& a, const Gf2Matrix& b) noexcept {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (a.get(i, j) != b.get(i, j)) return b.get(i, j);
    return false;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<word_type> bits_;
};

// ---------------------------------------------------------------------------
// Arithmetic and block plumbing

inline Gf2Matrix operator+(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw StructuralError("add: dimension mismatch " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()));
  Gf2Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = c.row(i);
    auto src = b.row(i);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
  }
  return c;
}

inline Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.cols() != b.rows())
    throw StructuralError("multiply: inner dimensions differ (" + std::to_string(a.cols()) +
                          " vs " + std::to_string(b.rows()) + ")");
  Gf2Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (!a.get(i, k)) continue;
      auto src = b.row(k);
      for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
    }
  }
  return c;
}

inline Gf2Matrix transpose(const Gf2Matrix& a) {
  Gf2Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.get(i, j)) t.set(j, i, true);
  return t;
}

/// A[I, J] for arbitrary index lists.
inline Gf2Matrix submatrix(const Gf2Matrix& a, std::span<const std::size_t> row_idx,
                           std::span<const std::size_t> col_idx) {
  Gf2Matrix s(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    if (row_idx[i] >= a.rows()) throw StructuralError("submatrix: row index out of range");
    for (std::size_t j = 0; j < col_idx.size(); ++j) {
      if (col_idx[j] >= a.cols()) throw StructuralError("submatrix: column index out of range");
      if (a.get(row_idx[i], col_idx[j])) s.set(i, j, true);
    }
  }
  return s;
}

/// Contiguous block starting at (r0, c0).
inline Gf2Matrix submatrix(const Gf2Matrix& a, std::size_t r0, std::size_t nr, std::size_t c0,
                           std::size_t nc) {
  if (r0 + nr > a.rows() || c0 + nc > a.cols())
    throw StructuralError("submatrix: block exceeds matrix bounds");
  Gf2Matrix s(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      if (a.get(r0 + i, c0 + j)) s.set(i, j, true);
  return s;
}

inline Gf2Matrix principal_submatrix(const Gf2Matrix& a, std::span<const std::size_t> idx) {
  return submatrix(a, idx, idx);
}

inline void paste(Gf2Matrix& dst, const Gf2Matrix& src, std::size_t r0, std::size_t c0) {
  if (r0 + src.rows() > dst.rows() || c0 + src.cols() > dst.cols())
    throw StructuralError("paste: block exceeds destination bounds");
  for (std::size_t i = 0; i < src.rows(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j) dst.set(r0 + i, c0 + j, src.get(i, j));
}

/// Assembles a grid of blocks. Every block in a grid row must share its row count and every
/// block in a grid column its column count; 0-sized blocks are allowed.
inline Gf2Matrix block_assemble(const std::vector<std::vector<Gf2Matrix>>& grid) {
  if (grid.empty()) return Gf2Matrix();
  const std::size_t gc = grid.front().size();
  std::vector<std::size_t> heights(grid.size()), widths(gc);
  for (std::size_t bi = 0; bi < grid.size(); ++bi) {
    if (grid[bi].size() != gc) throw StructuralError("block_assemble: ragged block grid");
    heights[bi] = gc == 0 ? 0 : grid[bi][0].rows();
  }
  for (std::size_t bj = 0; bj < gc; ++bj) widths[bj] = grid[0][bj].cols();
  for (std::size_t bi = 0; bi < grid.size(); ++bi)
    for (std::size_t bj = 0; bj < gc; ++bj)
      if (grid[bi][bj].rows() != heights[bi] || grid[bi][bj].cols() != widths[bj])
        throw StructuralError("block_assemble: block (" + std::to_string(bi) + "," +
                              std::to_string(bj) + ") has incompatible dimensions");
  std::size_t total_r = 0, total_c = 0;
  for (auto h : heights) total_r += h;
  for (auto w : widths) total_c += w;
  Gf2Matrix out(total_r, total_c);
  std::size_t r0 = 0;
  for (std::size_t bi = 0; bi < grid.size(); ++bi) {
    std::size_t c0 = 0;
    for (std::size_t bj = 0; bj < gc; ++bj) {
      paste(out, grid[bi][bj], r0, c0);
      c0 += widths[bj];
    }
    r0 += heights[bi];
  }
  return out;
}

inline Gf2Matrix hconcat(const std::vector<Gf2Matrix>& parts) { return block_assemble({parts}); }

inline Gf2Matrix vconcat(const std::vector<Gf2Matrix>& parts) {
  std::vector<std::vector<Gf2Matrix>> grid;
  grid.reserve(parts.size());
  for (const auto& p : parts) grid.push_back({p});
  return block_assemble(grid);
}

inline Gf2Matrix direct_sum(const Gf2Matrix& a, const Gf2Matrix& b) {
  return block_assemble({{a, Gf2Matrix(a.rows(), b.cols())}, {Gf2Matrix(b.rows(), a.cols()), b}});
}

// ---------------------------------------------------------------------------
// Elimination

namespace detail {

/// Rank by forward elimination, destroying `m`.
inline std::size_t eliminate_rank(Gf2Matrix& m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    const std::size_t w = c / Gf2Matrix::kWordBits;
    const Gf2Matrix::word_type bit = Gf2Matrix::word_type{1} << (c % Gf2Matrix::kWordBits);
    std::size_t p = r;
    while (p < m.rows() && !(m.row(p)[w] & bit)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i)
      if (m.row(i)[w] & bit) m.add_row(i, r);
    ++r;
  }
  return r;
}

/// Rank of a matrix whose rows fit into one word each; `rows` is clobbered.
inline std::size_t eliminate_rank_narrow(std::span<std::uint64_t> rows) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::uint64_t v = rows[i];
    if (v == 0) continue;
    // Keep pivots sorted by lowest set bit: reduce v against earlier pivots.
    for (std::size_t k = 0; k < r; ++k) {
      const std::uint64_t low = rows[k] & (~rows[k] + 1);
      if (v & low) v ^= rows[k];
    }
    if (v == 0) continue;
    const std::uint64_t low = v & (~v + 1);
    for (std::size_t k = 0; k < r; ++k)
      if (rows[k] & low) rows[k] ^= v;
    rows[r++] = v;
  }
  return r;
}

}  // namespace detail

inline std::size_t rank(const Gf2Matrix& m) {
  if (m.empty()) return 0;
  if (m.words_per_row() == 1) {
    std::vector<std::uint64_t> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows[i] = m.row(i)[0];
    return detail::eliminate_rank_narrow(rows);
  }
  Gf2Matrix work = m;
  return detail::eliminate_rank(work);
}

/// Inverse of a square matrix; throws StructuralError when singular.
inline Gf2Matrix inverse(const Gf2Matrix& m) {
  if (!m.is_square()) throw StructuralError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  Gf2Matrix a = m;
  Gf2Matrix inv = Gf2Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && !a.get(p, c)) ++p;
    if (p == n) throw StructuralError("inverse: matrix is singular");
    a.swap_rows(c, p);
    inv.swap_rows(c, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != c && a.get(i, c)) {
        a.add_row(i, c);
        inv.add_row(i, c);
      }
    }
  }
  return inv;
}

inline bool is_invertible(const Gf2Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

inline bool is_symmetric(const Gf2Matrix& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m.get(i, j) != m.get(j, i)) return false;
  return true;
}

inline void require_symmetric(const Gf2Matrix& m, std::string_view op) {
  if (!m.is_square())
    throw StructuralError(std::string(op) + ": matrix is not square (" + std::to_string(m.rows()) +
                          "x" + std::to_string(m.cols()) + ")");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m.get(i, j) != m.get(j, i))
        throw StructuralError(std::string(op) + ": matrix is not symmetric at (" +
                              std::to_string(i) + "," + std::to_string(j) + ")");
}

/// True iff every diagonal entry is zero. The input must be square and symmetric.
inline bool is_alternate(const Gf2Matrix& m) {
  require_symmetric(m, "is_alternate");
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m.get(i, i)) return false;
  return true;
}

/// Solves x^T * a = b^T for x, i.e. expresses the row vector b as a combination of the rows of a.
/// Returns false when b is not in the row space.
inline bool solve_row_combination(const Gf2Matrix& a, const Gf2Matrix& b_row,
                                  std::vector<bool>& coefficients) {
  if (b_row.rows() != 1 || b_row.cols() != a.cols())
    throw StructuralError("solve_row_combination: right-hand side must be a 1 x cols row");
  // Augment with an identity to track combinations.
  const std::size_t n = a.rows();
  Gf2Matrix work = hconcat({a, Gf2Matrix::identity(n)});
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < n; ++c) {
    std::size_t p = r;
    while (p < n && !work.get(p, c)) ++p;
    if (p == n) continue;
    work.swap_rows(r, p);
    for (std::size_t i = 0; i < n; ++i)
      if (i != r && work.get(i, c)) work.add_row(i, r);
    pivot_col.push_back(c);
    ++r;
  }
  Gf2Matrix target = hconcat({b_row, Gf2Matrix(1, n)});
  for (std::size_t k = 0; k < r; ++k) {
    if (target.get(0, pivot_col[k])) {
      auto dst = target.row(0);
      auto src = work.row(k);
      for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
    }
  }
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (target.get(0, c)) return false;
  coefficients.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) coefficients[i] = target.get(0, a.cols() + i);
  return true;
}

// ---------------------------------------------------------------------------
// Text format: "<rows> <cols>" then one line of '0'/'1' per row.

inline std::string to_text(const Gf2Matrix& m) {
  std::string s = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) s.push_back(m.get(i, j) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

/// Bit string of row i, index 0 leftmost.
inline std::string row_string(const Gf2Matrix& m, std::size_t i) {
  std::string s(m.cols(), '0');
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m.get(i, j)) s[j] = '1';
  return s;
}

}  // namespace z2rank
