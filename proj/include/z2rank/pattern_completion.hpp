#pragma once

/// Minimum-rank symmetric completion when an arbitrary symmetric set of entries is prescribed
/// (for drawings: the independent pairs) and all others, the diagonal included, are free.
///
/// A symmetric matrix of rank r that is not alternate is a Gram matrix of vectors in GF(2)^r; an
/// alternate one of rank r is a Gram matrix of even-weight vectors in GF(2)^(r+1), and even-weight
/// vectors in GF(2)^h have a Gram matrix of rank at most h-1. So searching for the smallest h
/// admitting vectors with y_e . y_f = value(e,f) on the prescribed entries, once with arbitrary and
/// once with even-weight vectors, pins the minimum down exactly.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "z2rank/congruence.hpp"
#include "z2rank/errors.hpp"
#include "z2rank/gf2_matrix.hpp"

namespace z2rank {

struct PatternCompletion {
  std::size_t rank = 0;
  Gf2Matrix witness;   // symmetric, equals `values` on the mask
  Gf2Matrix vectors;   // k x h, witness == vectors * vectors^T
  bool alternate = false;
  bool exact = true;   // false when a node limit cut a search short
  std::size_t nodes = 0;
};

inline constexpr std::size_t default_completion_node_limit = 200000;
inline constexpr std::size_t max_searched_crosscaps = 16;

namespace detail {

/// Affine solution set of {v : v . row_i = rhs_i} in GF(2)^h.
class AffineSolutions {
 public:
  AffineSolutions(std::size_t h, std::vector<std::uint64_t> rows, std::vector<bool> rhs) : h_(h) {
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < h && r < rows.size(); ++c) {
      const std::uint64_t bit = std::uint64_t{1} << c;
      std::size_t p = r;
      while (p < rows.size() && !(rows[p] & bit)) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[p], rows[r]);
      const bool t = rhs[p];
      rhs[p] = rhs[r];
      rhs[r] = t;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (i != r && (rows[i] & bit)) {
          rows[i] ^= rows[r];
          rhs[i] = rhs[i] != rhs[r];
        }
      pivot_col.push_back(c);
      ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
      if (rhs[i]) {
        feasible_ = false;
        return;
      }
    std::uint64_t pivots = 0;
    for (std::size_t i = 0; i < r; ++i) {
      pivots |= std::uint64_t{1} << pivot_col[i];
      if (rhs[i]) particular_ |= std::uint64_t{1} << pivot_col[i];
    }
    for (std::size_t c = 0; c < h; ++c) {
      const std::uint64_t bit = std::uint64_t{1} << c;
      if (pivots & bit) continue;
      std::uint64_t v = bit;
      for (std::size_t i = 0; i < r; ++i)
        if (rows[i] & bit) v |= std::uint64_t{1} << pivot_col[i];
      basis_.push_back(v);
    }
  }

  bool feasible() const noexcept { return feasible_; }
  std::uint64_t count() const noexcept { return feasible_ ? std::uint64_t{1} << basis_.size() : 0; }

  /// Solution number `index`, 0 <= index < count().
  std::uint64_t at(std::uint64_t index) const noexcept {
    std::uint64_t v = particular_;
    for (std::size_t b = 0; b < basis_.size(); ++b)
      if ((index >> b) & 1U) v ^= basis_[b];
    return v;
  }

 private:
  std::size_t h_;
  bool feasible_ = true;
  std::uint64_t particular_ = 0;
  std::vector<std::uint64_t> basis_;
};

class VectorSearch {
 public:
  VectorSearch(const Gf2Matrix& mask, const Gf2Matrix& values, std::size_t h, bool even,
               std::size_t node_limit)
      : mask_(mask), values_(values), h_(h), even_(even), limit_(node_limit), y_(mask.rows(), 0) {}

  bool run() { return place(0); }
  bool limit_hit() const noexcept { return limit_hit_; }
  std::size_t nodes() const noexcept { return nodes_; }
  const std::vector<std::uint64_t>& vectors() const noexcept { return y_; }

 private:
  bool place(std::size_t e) {
    if (e == y_.size()) return true;
    if (nodes_ >= limit_) {
      limit_hit_ = true;
      return false;
    }
    ++nodes_;
    std::vector<std::uint64_t> rows;
    std::vector<bool> rhs;
    const std::uint64_t ones = h_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << h_) - 1;
    if (even_ || mask_.get(e, e)) {
      rows.push_back(ones);
      rhs.push_back(even_ ? false : values_.get(e, e));
    }
    if (even_ && mask_.get(e, e) && values_.get(e, e)) return false;
    for (std::size_t f = 0; f < e; ++f)
      if (mask_.get(e, f)) {
        rows.push_back(y_[f]);
        rhs.push_back(values_.get(e, f));
      }
    const AffineSolutions sol(h_, std::move(rows), std::move(rhs));
    for (std::uint64_t i = 0; i < sol.count(); ++i) {
      y_[e] = sol.at(i);
      if (place(e + 1)) return true;
      if (limit_hit_) return false;
    }
    return false;
  }

  const Gf2Matrix& mask_;
  const Gf2Matrix& values_;
  std::size_t h_;
  bool even_;
  std::size_t limit_;
  std::size_t nodes_ = 0;
  bool limit_hit_ = false;
  std::vector<std::uint64_t> y_;
};

inline Gf2Matrix vectors_to_matrix(const std::vector<std::uint64_t>& y, std::size_t h) {
  Gf2Matrix m(y.size(), h);
  for (std::size_t e = 0; e < y.size(); ++e)
    for (std::size_t c = 0; c < h; ++c) m.set(e, c, (y[e] >> c) & 1U);
  return m;
}

struct SearchOutcome {
  bool found = false;
  bool exact = true;
  std::size_t nodes = 0;
  Gf2Matrix vectors;
};

/// Smallest h <= max_h with a solution; `exact` is false if some smaller h was cut off.
inline SearchOutcome smallest_vector_solution(const Gf2Matrix& mask, const Gf2Matrix& values,
                                              bool even, std::size_t max_h,
                                              std::size_t& budget) {
  SearchOutcome out;
  for (std::size_t h = 0; h <= max_h; ++h) {
    VectorSearch s(mask, values, h, even, budget);
    const bool ok = s.run();
    budget -= std::min(budget, s.nodes());
    out.nodes += s.nodes();
    if (ok) {
      out.found = true;
      out.vectors = vectors_to_matrix(s.vectors(), h);
      return out;
    }
    if (s.limit_hit()) out.exact = false;
  }
  return out;
}

inline PatternCompletion completion_from_vectors(const Gf2Matrix& v) {
  PatternCompletion c;
  c.vectors = v;
  c.witness = v * transpose(v);
  c.rank = rank(c.witness);
  c.alternate = is_alternate(c.witness);
  return c;
}

}  // namespace detail

/// Minimum rank over symmetric matrices equal to `values` wherever `mask` is 1 (alternate ones
/// only when `alternate_required`). Both arguments are symmetric k x k.
inline PatternCompletion min_rank_completion(const Gf2Matrix& mask, const Gf2Matrix& values,
                                             bool alternate_required,
                                             std::size_t node_limit = default_completion_node_limit) {
  require_symmetric(mask, "min_rank_completion");
  require_symmetric(values, "min_rank_completion");
  if (mask.rows() != values.rows())
    throw StructuralError("min_rank_completion: mask and values differ in size");
  const std::size_t k = mask.rows();

  Gf2Matrix fixed(k, k);
  bool forced_odd_diagonal = false;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (mask.get(i, j) && values.get(i, j)) {
        fixed.set(i, j, true);
        if (i == j) forced_odd_diagonal = true;
      }
  if (alternate_required && forced_odd_diagonal)
    throw StructuralError("min_rank_completion: a prescribed diagonal entry is 1, no alternate "
                          "completion exists");

  // Fallback that always exists: factor the completion with zeros in the free entries.
  const Gf2Matrix fallback = transpose(gram_factor(fixed).factor);
  std::size_t budget = node_limit;
  std::size_t nodes = 0;
  bool exact = true;

  PatternCompletion best;
  bool have = false;
  if (!forced_odd_diagonal) {
    const std::size_t cap = std::min(fallback.cols() == 0 ? 0 : fallback.cols() - 1,
                                     max_searched_crosscaps);
    auto alt = detail::smallest_vector_solution(mask, values, true, cap, budget);
    nodes += alt.nodes;
    exact = exact && alt.exact && (alt.found || cap + 1 >= fallback.cols());
    best = detail::completion_from_vectors(alt.found ? alt.vectors : fallback);
    have = true;
  }
  if (!alternate_required) {
    // only h < current best rank can improve
    const std::size_t limit = have ? best.rank : fallback.cols();
    if (limit > 0) {
      const std::size_t cap = std::min(limit - 1, max_searched_crosscaps);
      auto gen = detail::smallest_vector_solution(mask, values, false, cap, budget);
      nodes += gen.nodes;
      exact = exact && gen.exact && (gen.found || cap + 1 >= limit);
      if (gen.found) {
        PatternCompletion c = detail::completion_from_vectors(gen.vectors);
        if (!have || c.rank < best.rank || (c.rank == best.rank && lex_less(c.witness, best.witness)))
          best = std::move(c);
        have = true;
      }
    }
    if (!have) best = detail::completion_from_vectors(fallback);
  }
  best.exact = exact;
  best.nodes = nodes;
  return best;
}

/// A completion of rank < `below` if the capped searches find one. `exact` on the result (and
/// `complete` when nothing is found) says whether every capped search ran to the end.
struct ImprovementOutcome {
  std::optional<PatternCompletion> found;
  bool complete = true;
  std::size_t nodes = 0;
};

inline ImprovementOutcome completion_below(const Gf2Matrix& mask, const Gf2Matrix& values,
                                           bool alternate_required, std::size_t below,
                                           std::size_t node_limit = default_completion_node_limit) {
  ImprovementOutcome out;
  if (below == 0) return out;
  for (std::size_t i = 0; i < mask.rows(); ++i)
    if (mask.get(i, i) && values.get(i, i)) {
      if (alternate_required) return out;
      break;
    }
  std::size_t budget = node_limit;
  // even-weight vectors in GF(2)^h give rank <= h-1
  auto alt = detail::smallest_vector_solution(mask, values, true,
                                              std::min(below, max_searched_crosscaps), budget);
  out.nodes += alt.nodes;
  out.complete = alt.exact;
  if (alt.found) out.found = detail::completion_from_vectors(alt.vectors);
  if (!alternate_required) {
    const std::size_t cap = std::min(out.found ? out.found->rank : below, max_searched_crosscaps + 1);
    if (cap > 0) {
      auto gen = detail::smallest_vector_solution(mask, values, false, cap - 1, budget);
      out.nodes += gen.nodes;
      out.complete = out.complete && gen.exact;
      if (gen.found) {
        PatternCompletion c = detail::completion_from_vectors(gen.vectors);
        if (!out.found || c.rank < out.found->rank) out.found = std::move(c);
      }
    }
  }
  if (out.found && out.found->rank >= below) out.found.reset();
  if (out.found) {
    out.found->exact = out.complete;
    out.found->nodes = out.nodes;
  }
  return out;
}

}  // namespace z2rank
