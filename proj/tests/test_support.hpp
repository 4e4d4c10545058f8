#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "z2rank/gf2_matrix.hpp"

namespace z2rank::testing {

inline Gf2Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  Gf2Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() & 1U);
  return m;
}

inline Gf2Matrix random_symmetric(std::mt19937_64& rng, std::size_t n, bool alternate = false) {
  Gf2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const bool v = (i == j && alternate) ? false : (rng() & 1U);
      m.set(i, j, v);
      m.set(j, i, v);
    }
  return m;
}

// Matrix whose entries (row-major) are the low r*c bits of `code`.
inline Gf2Matrix matrix_from_code(std::uint64_t code, std::size_t r, std::size_t c) {
  Gf2Matrix m(r, c);
  for (std::size_t k = 0; k < r * c; ++k) m.set(k / c, k % c, (code >> k) & 1U);
  return m;
}

// Symmetric matrix built from the n(n+1)/2 upper-triangle bits of `code`.
inline Gf2Matrix symmetric_from_code(std::uint64_t code, std::size_t n) {
  Gf2Matrix m(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j, ++k) {
      const bool v = (code >> k) & 1U;
      m.set(i, j, v);
      m.set(j, i, v);
    }
  return m;
}

inline std::vector<Gf2Matrix> all_invertible(std::size_t n) {
  std::vector<Gf2Matrix> out;
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t code = 0; code < total; ++code) {
    Gf2Matrix m = matrix_from_code(code, n, n);
    if (is_invertible(m)) out.push_back(std::move(m));
  }
  return out;
}

// Reference rank by plain Gaussian elimination over vectors of bools.
inline std::size_t naive_rank(const Gf2Matrix& m) {
  std::vector<std::vector<bool>> a(m.rows(), std::vector<bool>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.get(i, j);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !a[p][c]) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && a[i][c])
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = a[i][j] != a[r][j];
    ++r;
  }
  return r;
}

}  // namespace z2rank::testing
