#pragma once

/// Congruence (A -> C^T A C) normal forms of symmetric GF(2) matrices and the Gram
/// factorization A = B^T B built on top of them.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "z2rank/gf2_matrix.hpp"

namespace z2rank {

/// Result of symmetric elimination: transform^T * core * transform == input.
///
/// `core` is block diagonal: its top-left core_rank x core_rank part is a direct sum of
/// atoms [1] and [[0,1],[1,0]] (sizes listed in `atoms`, in order), everything else is zero.
struct CongruenceReduction {
  Gf2Matrix transform;
  Gf2Matrix core;
  std::size_t core_rank = 0;
  std::vector<std::size_t> atoms;
};

namespace detail {

/// Working copy of a symmetric matrix plus the accumulated row operations T, so that
/// T * original * T^T == work() at all times.
class CongruenceWorkspace {
 public:
  explicit CongruenceWorkspace(Gf2Matrix m)
      : work_(std::move(m)), ops_(Gf2Matrix::identity(work_.rows())) {}

  const Gf2Matrix& work() const noexcept { return work_; }
  const Gf2Matrix& ops() const noexcept { return ops_; }

  /// row/col dst += row/col src
  void add(std::size_t dst, std::size_t src) {
    work_.add_symmetric(dst, src);
    ops_.add_row(dst, src);
  }

  void swap(std::size_t a, std::size_t b) {
    work_.swap_symmetric(a, b);
    ops_.swap_rows(a, b);
  }

  /// Adds a combination of `pivot_rows` to row `target` (symmetrically) so that the entries of
  /// row `target` in `columns` vanish. The pivot rows restricted to `columns` must span the
  /// target's restriction.
  void clear_against(std::size_t target, const std::vector<std::size_t>& pivot_rows,
                     const std::vector<std::size_t>& columns) {
    if (columns.empty()) return;
    const std::size_t t_idx[1] = {target};
    const Gf2Matrix rhs = submatrix(work_, t_idx, columns);
    if (rhs.is_zero()) return;
    if (pivot_rows.empty()) throw std::logic_error("clear_against: no pivot rows");
    const Gf2Matrix lhs = submatrix(work_, pivot_rows, columns);
    std::vector<bool> coef;
    if (!solve_row_combination(lhs, rhs, coef))
      throw std::logic_error("clear_against: target row is outside the pivot row space");
    for (std::size_t k = 0; k < pivot_rows.size(); ++k)
      if (coef[k]) add(target, pivot_rows[k]);
  }

  /// T^{-1} * m * T^{-T}: maps a matrix in reduced coordinates back to original coordinates.
  Gf2Matrix pull_back(const Gf2Matrix& m) const {
    const Gf2Matrix inv = inverse(ops_);
    return inv * m * transpose(inv);
  }

 private:
  Gf2Matrix work_;
  Gf2Matrix ops_;
};

/// Symmetric elimination of the principal block [first, first+size) using only operations among
/// its own indices (rows/columns outside the block are carried along). Afterwards the block is
/// diag(D11, 0) with D11 a direct sum of the returned atoms, placed at the leading indices.
///
/// Pivot rule: the first 1 on the diagonal of the remaining block is used as a 1x1 pivot; when
/// that diagonal is all zero, the first 1 of the remaining upper triangle in row-major order
/// gives a 2x2 off-diagonal pivot.
inline std::vector<std::size_t> symmetric_eliminate(CongruenceWorkspace& ws, std::size_t first,
                                                    std::size_t size) {
  const std::size_t end = first + size;
  const Gf2Matrix& w = ws.work();
  std::vector<std::size_t> atoms;
  std::size_t k = first;
  while (k < end) {
    std::size_t diag = k;
    while (diag < end && !w.get(diag, diag)) ++diag;
    if (diag < end) {
      ws.swap(k, diag);
      for (std::size_t j = k + 1; j < end; ++j)
        if (w.get(j, k)) ws.add(j, k);
      atoms.push_back(1);
      k += 1;
      continue;
    }
    std::size_t pi = end, pj = end;
    for (std::size_t i = k; i < end && pi == end; ++i)
      for (std::size_t j = i + 1; j < end; ++j)
        if (w.get(i, j)) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == end) break;  // remaining block is zero
    ws.swap(k, pi);
    ws.swap(k + 1, pj);
    for (std::size_t l = k + 2; l < end; ++l) {
      if (w.get(l, k)) ws.add(l, k + 1);
      if (w.get(l, k + 1)) ws.add(l, k);
    }
    atoms.push_back(2);
    k += 2;
  }
  return atoms;
}

}  // namespace detail

/// Reduces a symmetric matrix to diag(D11, 0) with D11 invertible by symmetric row/column
/// operations. Throws StructuralError for non-symmetric input.
inline CongruenceReduction congruence_reduce(const Gf2Matrix& a) {
  require_symmetric(a, "congruence_reduce");
  detail::CongruenceWorkspace ws(a);
  CongruenceReduction out;
  out.atoms = detail::symmetric_eliminate(ws, 0, a.rows());
  for (auto s : out.atoms) out.core_rank += s;
  out.core = ws.work();
  out.transform = transpose(inverse(ws.ops()));
  return out;
}

/// Congruence test. Alternate matrices are congruent exactly when their ranks agree; an alternate
/// and a non-alternate matrix are never congruent; two non-alternate matrices of equal size are
/// congruent exactly when their ranks agree (both reduce to diag(I_r, 0)).
inline bool congruent(const Gf2Matrix& a, const Gf2Matrix& b) {
  require_symmetric(a, "congruent");
  require_symmetric(b, "congruent");
  if (a.rows() != b.rows())
    throw StructuralError("congruent: size mismatch (" + std::to_string(a.rows()) + " vs " +
                          std::to_string(b.rows()) + ")");
  if (is_alternate(a) != is_alternate(b)) return false;
  return rank(a) == rank(b);
}

/// factor^T * factor == input. `factor` has one row per crosscap (h rows) and one column per
/// input row.
struct GramFactor {
  Gf2Matrix factor;
  std::size_t input_rank = 0;
  std::size_t factor_rank = 0;
};

namespace detail {

/// Returns E with E^T E == d11, where d11 is a direct sum of the given atoms and contains at
/// least one [1] atom.
inline Gf2Matrix factor_atoms(const Gf2Matrix& d11, const std::vector<std::size_t>& atoms) {
  const std::size_t r = d11.rows();
  std::size_t unit = r;
  {
    std::size_t pos = 0;
    for (auto s : atoms) {
      if (s == 1) {
        unit = pos;
        break;
      }
      pos += s;
    }
  }
  if (unit == r) throw std::logic_error("factor_atoms: alternate core has no Gram factor");

  // F^T F = diag(1, [[0,1],[1,0]]); F is symmetric, so G = F^{-1} maps the 3x3 atom pair to I_3.
  const Gf2Matrix f3 = Gf2Matrix::from_rows({"111", "110", "101"});
  const Gf2Matrix f3_inv = inverse(f3);

  Gf2Matrix g = Gf2Matrix::identity(r);  // g * d11 * g^T == I once all pairs are absorbed
  std::size_t pos = 0;
  for (auto s : atoms) {
    if (s == 2) {
      const std::size_t idx[3] = {unit, pos, pos + 1};
      Gf2Matrix local = Gf2Matrix::identity(r);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) local.set(idx[i], idx[j], f3_inv.get(i, j));
      g = local * g;
    }
    pos += s;
  }
  Gf2Matrix e = transpose(inverse(g));
  if (!(transpose(e) * e == d11)) throw std::logic_error("factor_atoms: atom factorization failed");
  return e;
}

}  // namespace detail

/// Factors a symmetric matrix as B^T B. For non-alternate input rank(B) == rank(A); for
/// alternate input a dummy unit row/column is prepended before reducing, so
/// rank(A) <= rank(B) <= rank(A) + 1. B has rank(A) rows (non-alternate) or rank(A)+1 rows
/// (alternate).
inline GramFactor gram_factor(const Gf2Matrix& a) {
  require_symmetric(a, "gram_factor");
  const bool alternate = is_alternate(a);
  const Gf2Matrix augmented =
      alternate ? direct_sum(Gf2Matrix::identity(1), a) : a;

  const CongruenceReduction red = congruence_reduce(augmented);
  const std::size_t r = red.core_rank;
  const Gf2Matrix d11 = submatrix(red.core, 0, r, 0, r);
  const Gf2Matrix e11 = detail::factor_atoms(d11, red.atoms);

  Gf2Matrix e_full(r, augmented.rows());
  paste(e_full, e11, 0, 0);
  Gf2Matrix b = e_full * red.transform;
  if (alternate) b = submatrix(b, 0, b.rows(), 1, b.cols() - 1);

  GramFactor out;
  out.factor = std::move(b);
  out.input_rank = alternate ? r - 1 : r;
  out.factor_rank = rank(out.factor);
  return out;
}

}  // namespace z2rank
