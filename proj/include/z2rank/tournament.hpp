#pragma once

/// Tournament matrices, the de Caen rank bound and the block-tournament rank bound.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "z2rank/congruence.hpp"
#include "z2rank/errors.hpp"
#include "z2rank/gf2_matrix.hpp"

namespace z2rank {

/// a_ij + a_ji == 1 for all i != j; the diagonal is unconstrained.
inline bool is_tournament(const Gf2Matrix& a) {
  if (!a.is_square())
    throw StructuralError("is_tournament: matrix is " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + ", not square");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (a.get(i, j) == a.get(j, i)) return false;
  return true;
}

struct DecaenReport {
  std::size_t n = 0;
  std::size_t rank = 0;
  std::size_t bound = 0;
  bool holds = false;
};

inline DecaenReport decaen_check(const Gf2Matrix& a) {
  if (!is_tournament(a)) throw StructuralError("decaen_check: input is not a tournament matrix");
  DecaenReport r;
  r.n = a.rows();
  r.rank = rank(a);
  r.bound = r.n == 0 ? 0 : r.n / 2;  // ceil((n-1)/2)
  r.holds = r.rank >= r.bound;
  return r;
}

namespace detail {

inline std::size_t ceil_half(std::size_t v) { return (v + 1) / 2; }

inline std::size_t clamp_sub(std::size_t a, std::size_t b) { return a > b ? a - b : 0; }

inline void require_block_domain(std::size_t m, std::size_t n, const char* op) {
  if (m < 2) throw DomainError(std::string(op) + ": m must be at least 2, got " + std::to_string(m));
  if (n < 1) throw DomainError(std::string(op) + ": n must be at least 1, got 0");
}

}  // namespace detail

/// ceil((m-1)(n-1)/2) - (m-2), clamped at 0.
inline std::size_t block_bound(std::size_t m, std::size_t n) {
  detail::require_block_domain(m, n, "block_bound");
  return detail::clamp_sub(detail::ceil_half((m - 1) * (n - 1)), m - 2);
}

/// The variant with -(n-2) in place of -(m-2), clamped at 0. Only evaluated for comparison.
inline std::size_t block_bound_proof_tail(std::size_t m, std::size_t n) {
  detail::require_block_domain(m, n, "block_bound_proof_tail");
  return detail::clamp_sub(detail::ceil_half((m - 1) * (n - 1)), n >= 2 ? n - 2 : 0);
}

inline Gf2Matrix random_tournament(std::mt19937_64& rng, std::size_t n) {
  Gf2Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a.set(i, i, rng() & 1U);
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool b = rng() & 1U;
      a.set(i, j, b);
      a.set(j, i, !b);
    }
  }
  return a;
}

struct OffDiagonalBlock {
  std::size_t i = 0, j = 0;
  bool uses_j = false;
  std::vector<bool> diag_perturbation;
};

enum class DiagonalFill { gram, arbitrary };

struct BlockTournamentInstance {
  std::size_t m = 0, n = 0;
  Gf2Matrix base;  // the common tournament B
  Gf2Matrix full;  // mn x mn, symmetric
  std::vector<OffDiagonalBlock> structure;  // every ordered pair i != j
  DiagonalFill diagonal = DiagonalFill::gram;
  Gf2Matrix crosscaps;  // crosscaps^T * crosscaps == full
};

namespace detail {

inline Gf2Matrix off_block(const Gf2Matrix& base, bool uses_j, const std::vector<bool>& d) {
  Gf2Matrix b = uses_j ? base + Gf2Matrix::ones(base.rows()) : base;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d[k]) b.flip(k, k);
  return b;
}

}  // namespace detail

/// Random symmetric m x m block matrix whose off-diagonal blocks are B + D_ij or J + B + D_ij for
/// one random tournament B. With DiagonalFill::gram the diagonal blocks are Gram matrices Y_i^T Y_i
/// of random crosscap vectors; otherwise they are arbitrary symmetric matrices. The transpose of
/// J + B + D is B + (I + D) because B + B^T = J + I, so the lower blocks keep the same shape with
/// the J flag flipped.
inline BlockTournamentInstance generate_instance(std::size_t m, std::size_t n, std::uint64_t seed,
                                                 DiagonalFill fill = DiagonalFill::gram) {
  detail::require_block_domain(m, n, "generate_instance");
  std::mt19937_64 rng(seed);
  BlockTournamentInstance inst;
  inst.m = m;
  inst.n = n;
  inst.diagonal = fill;
  inst.base = random_tournament(rng, n);

  std::vector<std::vector<Gf2Matrix>> grid(m, std::vector<Gf2Matrix>(m));
  for (std::size_t i = 0; i < m; ++i) {
    if (fill == DiagonalFill::gram) {
      Gf2Matrix y(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) y.set(r, c, rng() & 1U);
      grid[i][i] = transpose(y) * y;
    } else {
      Gf2Matrix s(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r; c < n; ++c) {
          const bool v = rng() & 1U;
          s.set(r, c, v);
          s.set(c, r, v);
        }
      grid[i][i] = s;
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      OffDiagonalBlock up{i, j, static_cast<bool>(rng() & 1U), std::vector<bool>(n)};
      for (std::size_t k = 0; k < n; ++k) up.diag_perturbation[k] = rng() & 1U;
      OffDiagonalBlock down{j, i, !up.uses_j, std::vector<bool>(n)};
      for (std::size_t k = 0; k < n; ++k) down.diag_perturbation[k] = !up.diag_perturbation[k];
      grid[i][j] = detail::off_block(inst.base, up.uses_j, up.diag_perturbation);
      grid[j][i] = transpose(grid[i][j]);
      inst.structure.push_back(std::move(up));
      inst.structure.push_back(std::move(down));
    }
  inst.full = block_assemble(grid);
  inst.crosscaps = gram_factor(inst.full).factor;
  return inst;
}

struct BlockBoundReport {
  std::size_t m = 0, n = 0;
  std::size_t rank = 0;
  std::size_t bound_stmt = 0;
  std::size_t bound_proof_tail = 0;
  bool holds = false;             // rank >= bound_stmt
  bool proof_tail_holds = false;  // rank >= bound_proof_tail
};

/// Checks the block-tournament hypotheses of `full` against `base` directly (the recorded
/// structure is not trusted) and compares the rank with both bound variants.
inline BlockBoundReport verify_block_bound(std::size_t m, std::size_t n, const Gf2Matrix& base,
                                           const Gf2Matrix& full) {
  detail::require_block_domain(m, n, "verify_block_bound");
  if (full.rows() != m * n || !full.is_square())
    throw StructuralError("verify_block_bound: full matrix must be " + std::to_string(m * n) +
                          "x" + std::to_string(m * n));
  if (base.rows() != n || !is_tournament(base))
    throw StructuralError("verify_block_bound: base is not an " + std::to_string(n) + "x" +
                          std::to_string(n) + " tournament matrix");
  require_symmetric(full, "verify_block_bound");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const Gf2Matrix residue = submatrix(full, i * n, n, j * n, n) + base;
      int off = -1;  // common off-diagonal value of the residue
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          if (r == c) continue;
          const int v = residue.get(r, c) ? 1 : 0;
          if (off < 0) off = v;
          if (v != off)
            throw StructuralError("verify_block_bound: block (" + std::to_string(i) + "," +
                                  std::to_string(j) +
                                  ") is neither B + D nor J + B + D for a diagonal D");
        }
    }
  BlockBoundReport r;
  r.m = m;
  r.n = n;
  r.rank = rank(full);
  r.bound_stmt = block_bound(m, n);
  r.bound_proof_tail = block_bound_proof_tail(m, n);
  r.holds = r.rank >= r.bound_stmt;
  r.proof_tail_holds = r.rank >= r.bound_proof_tail;
  return r;
}

inline BlockBoundReport verify_block_bound(const BlockTournamentInstance& inst) {
  return verify_block_bound(inst.m, inst.n, inst.base, inst.full);
}

}  // namespace z2rank
