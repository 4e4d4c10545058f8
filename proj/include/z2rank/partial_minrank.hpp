#pragma once

/// Minimum-rank completion of partial symmetric block matrices over GF(2).
///
/// Closed forms come with explicit witnesses: each constructor replays a block lower-triangular
/// congruence T (rows of a variable block only ever receive multiples of fixed-block rows or of
/// rows in the same variable block), chooses the optimal variable blocks in the reduced
/// coordinates and maps them back through T^{-1} (.) T^{-T}. Because of the triangular shape, the
/// fixed blocks come back unchanged, which is checked before returning.

#include <cstddef>
#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "z2rank/congruence.hpp"
#include "z2rank/errors.hpp"
#include "z2rank/gf2_matrix.hpp"
#include "z2rank/matrix_io.hpp"

namespace z2rank {

/// Square grid of blocks; a block is either known or an unknown symmetric placeholder.
/// Unknown blocks are only allowed on the diagonal.
class PartialSymmetricMatrix {
 public:
  PartialSymmetricMatrix() = default;

  PartialSymmetricMatrix(std::vector<std::size_t> block_sizes,
                         std::vector<std::vector<std::optional<Gf2Matrix>>> grid)
      : sizes_(std::move(block_sizes)), grid_(std::move(grid)) {
    validate();
  }

  std::size_t block_count() const noexcept { return sizes_.size(); }
  const std::vector<std::size_t>& block_sizes() const noexcept { return sizes_; }
  bool is_unknown(std::size_t i, std::size_t j) const { return !grid_[i][j].has_value(); }
  const Gf2Matrix& block(std::size_t i, std::size_t j) const { return *grid_[i][j]; }

  std::size_t dimension() const noexcept {
    std::size_t n = 0;
    for (auto s : sizes_) n += s;
    return n;
  }

  std::size_t offset(std::size_t block) const noexcept {
    std::size_t o = 0;
    for (std::size_t i = 0; i < block; ++i) o += sizes_[i];
    return o;
  }

  std::vector<std::size_t> unknown_blocks() const {
    std::vector<std::size_t> u;
    for (std::size_t i = 0; i < sizes_.size(); ++i)
      if (is_unknown(i, i)) u.push_back(i);
    return u;
  }

  /// Full matrix with the unknown diagonal blocks replaced by `witnesses` (in block order).
  Gf2Matrix substitute(const std::vector<Gf2Matrix>& witnesses) const {
    const auto unknown = unknown_blocks();
    if (witnesses.size() != unknown.size())
      throw StructuralError("substitute: expected " + std::to_string(unknown.size()) +
                            " witness blocks, got " + std::to_string(witnesses.size()));
    Gf2Matrix full(dimension(), dimension());
    std::size_t w = 0;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      for (std::size_t j = 0; j < sizes_.size(); ++j) {
        if (is_unknown(i, j)) {
          const Gf2Matrix& x = witnesses[w++];
          if (x.rows() != sizes_[i] || x.cols() != sizes_[i])
            throw StructuralError("substitute: witness for block " + std::to_string(i) +
                                  " has wrong size");
          if (!is_symmetric(x))
            throw StructuralError("substitute: witness for block " + std::to_string(i) +
                                  " is not symmetric");
          paste(full, x, offset(i), offset(j));
        } else {
          paste(full, block(i, j), offset(i), offset(j));
        }
      }
    }
    return full;
  }

 private:
  void validate() const {
    const std::size_t k = sizes_.size();
    if (grid_.size() != k) throw StructuralError("partial matrix: grid row count differs from k");
    for (std::size_t i = 0; i < k; ++i) {
      if (grid_[i].size() != k)
        throw StructuralError("partial matrix: grid row " + std::to_string(i) + " is not of length k");
      for (std::size_t j = 0; j < k; ++j) {
        const auto& b = grid_[i][j];
        if (!b.has_value()) {
          if (i != j)
            throw StructuralError("partial matrix: unknown block (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") is off the diagonal");
          continue;
        }
        if (b->rows() != sizes_[i] || b->cols() != sizes_[j])
          throw StructuralError("partial matrix: block (" + std::to_string(i) + "," +
                                std::to_string(j) + ") is " + std::to_string(b->rows()) + "x" +
                                std::to_string(b->cols()) + ", expected " +
                                std::to_string(sizes_[i]) + "x" + std::to_string(sizes_[j]));
      }
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j) {
        if (i == j) {
          if (grid_[i][i] && !is_symmetric(*grid_[i][i]))
            throw StructuralError("partial matrix: diagonal block " + std::to_string(i) +
                                  " is not symmetric");
          continue;
        }
        if (!(*grid_[i][j] == transpose(*grid_[j][i])))
          throw StructuralError("partial matrix: block (" + std::to_string(j) + "," +
                                std::to_string(i) + ") is not the transpose of block (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
      }
  }

  std::vector<std::size_t> sizes_;
  std::vector<std::vector<std::optional<Gf2Matrix>>> grid_;
};

/// Text format: "<k> ; <size_1> ... <size_k>" followed by k*k blocks in row-major order, each
/// either "?" or an inline matrix.
inline PartialSymmetricMatrix parse_partial_matrix(std::string_view text) {
  TextScanner in(text);
  const std::size_t k = in.next_count("block count");
  in.expect(";");
  std::vector<std::size_t> sizes(k);
  for (auto& s : sizes) s = in.next_count("block size");
  std::vector<std::vector<std::optional<Gf2Matrix>>> grid(k, std::vector<std::optional<Gf2Matrix>>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      TextScanner probe = in;
      const auto tok = probe.next("block entry");
      if (tok.text == "?") {
        in = probe;
        continue;
      }
      const std::size_t line = tok.line, col = tok.column;
      Gf2Matrix m = parse_matrix(in);
      if (m.rows() != sizes[i] || m.cols() != sizes[j])
        throw ParseError("block (" + std::to_string(i) + "," + std::to_string(j) + ") is " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             ", expected " + std::to_string(sizes[i]) + "x" +
                             std::to_string(sizes[j]),
                         line, col);
      grid[i][j] = std::move(m);
    }
  }
  in.expect_end();
  return PartialSymmetricMatrix(std::move(sizes), std::move(grid));
}

inline std::string to_text(const PartialSymmetricMatrix& p) {
  std::string s = std::to_string(p.block_count()) + " ;";
  for (auto sz : p.block_sizes()) s += " " + std::to_string(sz);
  s += "\n";
  for (std::size_t i = 0; i < p.block_count(); ++i)
    for (std::size_t j = 0; j < p.block_count(); ++j)
      s += p.is_unknown(i, j) ? std::string("?\n") : to_text(p.block(i, j));
  return s;
}

enum class CompletionKind { exact, upper_bound };

inline const char* to_string(CompletionKind k) {
  return k == CompletionKind::exact ? "exact" : "upper_bound";
}

struct CompletionResult {
  std::size_t value = 0;
  std::vector<Gf2Matrix> witnesses;  // one per unknown block, in block order
  std::size_t achieved_rank = 0;
  CompletionKind kind = CompletionKind::exact;
};

namespace detail {

inline std::vector<std::size_t> iota(std::size_t first, std::size_t count) {
  std::vector<std::size_t> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = first + i;
  return v;
}

/// Diagonal block [first, first+size) of `m` replaced by `y`.
inline void overwrite_block(Gf2Matrix& m, std::size_t first, const Gf2Matrix& y) {
  paste(m, y, first, first);
}

inline Gf2Matrix partial_identity(std::size_t n, std::size_t r) {
  Gf2Matrix m(n, n);
  for (std::size_t i = 0; i < r && i < n; ++i) m.set(i, i, true);
  return m;
}

/// Pulls the reduced target back, checks that the fixed blocks survived and packages the
/// variable diagonal blocks (given as (first, size) ranges) as witnesses.
inline CompletionResult finish_completion(const CongruenceWorkspace& ws, const Gf2Matrix& target,
                                          const Gf2Matrix& original,
                                          const std::vector<std::pair<std::size_t, std::size_t>>& variable,
                                          std::size_t value, CompletionKind kind) {
  const Gf2Matrix full = ws.pull_back(target);
  std::vector<bool> is_var(full.rows(), false);
  std::vector<std::size_t> owner(full.rows(), 0);
  for (std::size_t b = 0; b < variable.size(); ++b)
    for (std::size_t i = variable[b].first; i < variable[b].first + variable[b].second; ++i) {
      is_var[i] = true;
      owner[i] = b;
    }
  for (std::size_t i = 0; i < full.rows(); ++i)
    for (std::size_t j = 0; j < full.cols(); ++j) {
      const bool free_entry = is_var[i] && is_var[j] && owner[i] == owner[j];
      if (!free_entry && full.get(i, j) != original.get(i, j))
        throw std::logic_error("minrank witness construction changed a fixed block");
    }
  CompletionResult out;
  out.value = value;
  out.kind = kind;
  for (const auto& [first, size] : variable)
    out.witnesses.push_back(submatrix(full, first, size, first, size));
  out.achieved_rank = rank(full);
  if (kind == CompletionKind::exact ? out.achieved_rank != value : out.achieved_rank > value)
    throw std::logic_error("minrank witness does not achieve the formula value");
  return out;
}

/// Reduces the (block1 rows) x (block2 columns) rectangle at the given offsets to diag(I_r, 0)
/// using operations inside block 1 and inside block 2 only. Returns r.
inline std::size_t diagonalize_cross_block(CongruenceWorkspace& ws, std::size_t r1, std::size_t n1,
                                           std::size_t c1, std::size_t n2) {
  const Gf2Matrix& w = ws.work();
  std::size_t r = 0;
  while (r < n1 && r < n2) {
    std::size_t pi = n1, pj = n2;
    for (std::size_t i = r; i < n1 && pi == n1; ++i)
      for (std::size_t j = r; j < n2; ++j)
        if (w.get(r1 + i, c1 + j)) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == n1) break;
    if (pi != r) ws.swap(r1 + r, r1 + pi);
    if (pj != r) ws.swap(c1 + r, c1 + pj);
    for (std::size_t i = 0; i < n1; ++i)
      if (i != r && w.get(r1 + i, c1 + r)) ws.add(r1 + i, r1 + r);
    for (std::size_t j = 0; j < n2; ++j)
      if (j != r && w.get(r1 + r, c1 + j)) ws.add(c1 + j, c1 + r);
    ++r;
  }
  return r;
}

/// Row echelon form of the rows [first, first+size) restricted to `columns`, using row operations
/// inside that range only. Independent rows are moved to the front; returns their count.
inline std::size_t echelon_rows(CongruenceWorkspace& ws, std::size_t first, std::size_t size,
                                const std::vector<std::size_t>& columns) {
  const Gf2Matrix& w = ws.work();
  std::size_t r = 0;
  for (std::size_t c : columns) {
    if (r == size) break;
    std::size_t p = size;
    for (std::size_t i = r; i < size; ++i)
      if (w.get(first + i, c)) {
        p = i;
        break;
      }
    if (p == size) continue;
    if (p != r) ws.swap(first + r, first + p);
    for (std::size_t i = 0; i < size; ++i)
      if (i != r && w.get(first + i, c)) ws.add(first + i, first + r);
    ++r;
  }
  return r;
}

}  // namespace detail

/// min over symmetric X of rank [[a11, a12], [a12^T, X]] = 2 rank[a11 a12] - rank(a11).
inline CompletionResult minrank_corner(const Gf2Matrix& a11, const Gf2Matrix& a12) {
  require_symmetric(a11, "minrank_corner");
  if (a12.rows() != a11.rows())
    throw StructuralError("minrank_corner: a12 has " + std::to_string(a12.rows()) +
                          " rows, a11 has " + std::to_string(a11.rows()));
  const std::size_t n1 = a11.rows(), n2 = a12.cols();
  const Gf2Matrix original = block_assemble({{a11, a12}, {transpose(a12), Gf2Matrix(n2, n2)}});
  const std::size_t value = 2 * rank(hconcat({a11, a12})) - rank(a11);

  detail::CongruenceWorkspace ws(original);
  std::size_t core = 0;
  for (auto s : detail::symmetric_eliminate(ws, 0, n1)) core += s;
  const auto core_idx = detail::iota(0, core);
  for (std::size_t t = n1; t < n1 + n2; ++t) ws.clear_against(t, core_idx, core_idx);

  Gf2Matrix target = ws.work();
  detail::overwrite_block(target, n1, Gf2Matrix(n2, n2));
  return detail::finish_completion(ws, target, original, {{n1, n2}}, value, CompletionKind::exact);
}

/// min over symmetric X1, X2 of rank [[X1, a12], [a12^T, X2]] = rank(a12).
inline CompletionResult minrank_two_diag(const Gf2Matrix& a12) {
  const std::size_t n1 = a12.rows(), n2 = a12.cols();
  const Gf2Matrix original =
      block_assemble({{Gf2Matrix(n1, n1), a12}, {transpose(a12), Gf2Matrix(n2, n2)}});
  detail::CongruenceWorkspace ws(original);
  const std::size_t r = detail::diagonalize_cross_block(ws, 0, n1, n1, n2);

  Gf2Matrix target = ws.work();
  detail::overwrite_block(target, 0, detail::partial_identity(n1, r));
  detail::overwrite_block(target, n1, detail::partial_identity(n2, r));
  return detail::finish_completion(ws, target, original, {{0, n1}, {n1, n2}}, rank(a12),
                                   CompletionKind::exact);
}

/// Upper bound for min over symmetric X2, X3 of
///   rank [[a11, a12, a13], [a12^T, X2, a23], [a13^T, a23^T, X3]]
/// equal to 2 rank[a11 a12 a13] + rank[[a11, a12], [a13^T, a23^T]] - rank[a11 a12] - rank[a11 a13].
inline CompletionResult minrank_three_upper(const Gf2Matrix& a11, const Gf2Matrix& a12,
                                            const Gf2Matrix& a13, const Gf2Matrix& a23) {
  require_symmetric(a11, "minrank_three_upper");
  const std::size_t n1 = a11.rows(), n2 = a12.cols(), n3 = a13.cols();
  if (a12.rows() != n1 || a13.rows() != n1)
    throw StructuralError("minrank_three_upper: a12 and a13 must have " + std::to_string(n1) +
                          " rows");
  if (a23.rows() != n2 || a23.cols() != n3)
    throw StructuralError("minrank_three_upper: a23 must be " + std::to_string(n2) + "x" +
                          std::to_string(n3));
  const Gf2Matrix original = block_assemble({{a11, a12, a13},
                                             {transpose(a12), Gf2Matrix(n2, n2), a23},
                                             {transpose(a13), transpose(a23), Gf2Matrix(n3, n3)}});
  const std::size_t value =
      2 * rank(hconcat({a11, a12, a13})) +
      rank(block_assemble({{a11, a12}, {transpose(a13), transpose(a23)}})) -
      rank(hconcat({a11, a12})) - rank(hconcat({a11, a13}));

  const std::size_t b2 = n1, b3 = n1 + n2;
  detail::CongruenceWorkspace ws(original);

  // core of a11, then decouple it from blocks 2 and 3
  std::size_t core = 0;
  for (auto s : detail::symmetric_eliminate(ws, 0, n1)) core += s;
  const auto core_idx = detail::iota(0, core);
  for (std::size_t t = b2; t < b3 + n3; ++t) ws.clear_against(t, core_idx, core_idx);

  // rows of blocks 2 and 3 against the zero part of a11
  const auto z_idx = detail::iota(core, n1 - core);
  const std::size_t d = detail::echelon_rows(ws, b2, n2, z_idx);
  const std::size_t e = detail::echelon_rows(ws, b3, n3, z_idx);
  const auto d_idx = detail::iota(b2, d);
  const auto e_idx = detail::iota(b3, e);

  for (std::size_t t = b3; t < b3 + n3; ++t) ws.clear_against(t, z_idx, d_idx);
  for (std::size_t t = b2 + d; t < b3; ++t) ws.clear_against(t, z_idx, e_idx);

  // the free parts only meet through F1 = W[free2, free3]
  const std::size_t f2 = n2 - d, f3 = n3 - e;
  const std::size_t f = detail::diagonalize_cross_block(ws, b2 + d, f2, b3 + e, f3);

  Gf2Matrix y2(n2, n2), y3(n3, n3);
  for (std::size_t i = 0; i < f; ++i) {
    y2.set(d + i, d + i, true);
    y3.set(e + i, e + i, true);
  }
  Gf2Matrix target = ws.work();
  detail::overwrite_block(target, b2, y2);
  detail::overwrite_block(target, b3, y3);
  return detail::finish_completion(ws, target, original, {{b2, n2}, {b3, n3}}, value,
                                   CompletionKind::upper_bound);
}

/// Minimum rank of [[a11, a12], [a21, X]] over arbitrary (not necessarily symmetric) X.
inline std::size_t davis_woerdeman(const Gf2Matrix& a11, const Gf2Matrix& a12,
                                   const Gf2Matrix& a21) {
  if (a12.rows() != a11.rows() || a21.cols() != a11.cols())
    throw StructuralError("davis_woerdeman: block dimensions are inconsistent");
  return rank(hconcat({a11, a12})) + rank(vconcat({a11, a21})) - rank(a11);
}

/// The ranks entering the Cohen et al. formula for the 3x3 layout with X2, X3 free.
struct CohenRanks {
  std::size_t row_all = 0;      // [A11 A12 A13]
  std::size_t col_all = 0;      // [A11; A21; A31]
  std::size_t m_12_31 = 0;      // [[A11 A12]; [A31 A32]]
  std::size_t row_12 = 0;       // [A11 A12]
  std::size_t col_31 = 0;       // [A11; A31]
  std::size_t m_13_21 = 0;      // [[A11 A13]; [A21 A23]]
  std::size_t row_13 = 0;       // [A11 A13]
  std::size_t col_21 = 0;       // [A11; A21]
};

/// Right-hand side of the Cohen et al. formula, evaluated as written. Over GF(2) this is only a
/// comparison value; it is not a theorem there.
inline long long cohen_minrank(const CohenRanks& r) {
  const auto s = [](std::size_t v) { return static_cast<long long>(v); };
  const long long t1 = s(r.m_12_31) - (s(r.row_12) + s(r.col_31));
  const long long t2 = s(r.m_13_21) - (s(r.row_13) + s(r.col_21));
  return s(r.row_all) + s(r.col_all) + std::min(t1, t2);
}

inline CohenRanks cohen_ranks(const Gf2Matrix& a11, const Gf2Matrix& a12, const Gf2Matrix& a13,
                              const Gf2Matrix& a23) {
  const Gf2Matrix a21 = transpose(a12), a31 = transpose(a13), a32 = transpose(a23);
  CohenRanks r;
  r.row_all = rank(hconcat({a11, a12, a13}));
  r.col_all = rank(vconcat({a11, a21, a31}));
  r.m_12_31 = rank(block_assemble({{a11, a12}, {a31, a32}}));
  r.row_12 = rank(hconcat({a11, a12}));
  r.col_31 = rank(vconcat({a11, a31}));
  r.m_13_21 = rank(block_assemble({{a11, a13}, {a21, a23}}));
  r.row_13 = rank(hconcat({a11, a13}));
  r.col_21 = rank(vconcat({a11, a21}));
  return r;
}

inline constexpr std::size_t default_oracle_bits = 24;

/// Exhaustive minimum over all symmetric completions (zero-diagonal ones when
/// `require_alternate`). Among minimizers the witness with the lexicographically smallest
/// completion bit string wins; bits are the upper triangles of the unknown blocks in block order,
/// row-major.
inline CompletionResult brute_force_minrank(const PartialSymmetricMatrix& p, bool require_alternate,
                                            std::size_t bit_limit = default_oracle_bits) {
  struct Slot {
    std::size_t i, j;
  };
  std::vector<Slot> slots;
  const auto unknown = p.unknown_blocks();
  for (auto b : unknown) {
    const std::size_t o = p.offset(b), s = p.block_sizes()[b];
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = require_alternate ? i + 1 : i; j < s; ++j) slots.push_back({o + i, o + j});
  }
  if (slots.size() > bit_limit || slots.size() > 62)
    throw CapacityError("brute_force_minrank: " + std::to_string(slots.size()) +
                            " free bits exceed the limit of " + std::to_string(bit_limit),
                        slots.size(), bit_limit);

  std::vector<Gf2Matrix> zero_witnesses;
  for (auto b : unknown) zero_witnesses.emplace_back(p.block_sizes()[b], p.block_sizes()[b]);
  Gf2Matrix m = p.substitute(zero_witnesses);
  if (require_alternate)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m.get(i, i))
        throw StructuralError("brute_force_minrank: known diagonal entry " + std::to_string(i) +
                              " is 1, no alternate completion exists");

  // Gray code walk; integer bit (B-1-k) holds free bit k so integer order is lexicographic order.
  const std::size_t bits = slots.size();
  std::uint64_t code = 0, best_code = 0;
  std::size_t best = rank(m);
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t step = 1; step < total; ++step) {
    const unsigned b = static_cast<unsigned>(__builtin_ctzll(step));
    code ^= std::uint64_t{1} << b;
    const Slot& sl = slots[bits - 1 - b];
    m.flip(sl.i, sl.j);
    if (sl.i != sl.j) m.flip(sl.j, sl.i);
    const std::size_t r = rank(m);
    if (r < best || (r == best && code < best_code)) {
      best = r;
      best_code = code;
    }
  }

  CompletionResult out;
  out.value = best;
  out.kind = CompletionKind::exact;
  std::size_t k = 0;
  for (auto b : unknown) {
    const std::size_t s = p.block_sizes()[b];
    Gf2Matrix x(s, s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = require_alternate ? i + 1 : i; j < s; ++j, ++k)
        if ((best_code >> (bits - 1 - k)) & 1U) {
          x.set(i, j, true);
          x.set(j, i, true);
        }
    out.witnesses.push_back(std::move(x));
  }
  out.achieved_rank = rank(p.substitute(out.witnesses));
  return out;
}


}  // namespace z2rank
