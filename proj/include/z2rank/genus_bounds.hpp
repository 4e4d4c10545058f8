#pragma once

/// Formula bounds for K_{m,n}, the Kleitman parity invariant, the K_{m,n} Gram block matrix,
/// the 2-amalgamation inequalities and the rank inequality used for them.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "z2rank/drawing.hpp"
#include "z2rank/errors.hpp"
#include "z2rank/gf2_matrix.hpp"
#include "z2rank/tournament.hpp"

namespace z2rank {

struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational make(long long n, long long d) {
    if (d == 0) throw DomainError("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    return {n / (g == 0 ? 1 : g), d / (g == 0 ? 1 : g)};
  }
  long long ceil() const { return num >= 0 ? (num + den - 1) / den : -((-num) / den); }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
};

inline std::string to_string(const Rational& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

namespace detail {

inline void require_ringel_domain(std::size_t m, std::size_t n, const char* op) {
  if (m < 2 || n < 2)
    throw DomainError(std::string(op) + ": m and n must be at least 2, got " + std::to_string(m) +
                      " and " + std::to_string(n));
}

}  // namespace detail

inline std::size_t ringel_genus(std::size_t m, std::size_t n) {
  detail::require_ringel_domain(m, n, "ringel_genus");
  return ((m - 2) * (n - 2) + 3) / 4;
}

inline std::size_t ringel_euler_genus(std::size_t m, std::size_t n) {
  detail::require_ringel_domain(m, n, "ringel_euler_genus");
  return ((m - 2) * (n - 2) + 1) / 2;
}

struct KmnBoundReport {
  std::size_t m = 0, n = 0;
  std::size_t g_ringel = 0, eg_ringel = 0;
  Rational g0_raw, eg0_raw;  // before ceiling and clamping
  std::size_t g0_lower = 0, eg0_lower = 0;
  Rational ratio;  // g0_lower / g_ringel
};

/// Lower bounds on g0 and eg0 of K_{m,n}, n >= m >= 3.
inline KmnBoundReport thm1_lower_bounds(std::size_t m, std::size_t n) {
  if (m < 3) throw DomainError("thm1_lower_bounds: m must be at least 3, got " + std::to_string(m));
  if (n < m)
    throw DomainError("thm1_lower_bounds: requires n >= m, got m = " + std::to_string(m) +
                      ", n = " + std::to_string(n));
  KmnBoundReport r;
  r.m = m;
  r.n = n;
  r.g_ringel = ringel_genus(m, n);
  r.eg_ringel = ringel_euler_genus(m, n);
  const long long core = static_cast<long long>((n - 2) * (m - 2)) - 2 * static_cast<long long>(m - 3);
  r.g0_raw = Rational::make(core, 4);
  r.eg0_raw = Rational::make(core, 2);
  r.g0_lower = static_cast<std::size_t>(std::max(0LL, r.g0_raw.ceil()));
  r.eg0_lower = static_cast<std::size_t>(std::max(0LL, r.eg0_raw.ceil()));
  r.ratio = Rational::make(static_cast<long long>(r.g0_lower), static_cast<long long>(r.g_ringel));
  return r;
}

/// Vertices of K_{3,3} as {a,b,c} and {0,1,2}.
struct K33Labeling {
  std::size_t a = 0, b = 1, c = 2;
  std::size_t zero = 3, one = 4, two = 5;
};

namespace detail {

inline std::size_t labeled_edge(const Graph& g, std::size_t x, std::size_t y, const char* op) {
  const auto e = g.find_edge(x, y);
  if (!e)
    throw StructuralError(std::string(op) + ": no edge between vertices " + std::to_string(x) +
                          " and " + std::to_string(y));
  return *e;
}

inline void require_k33_labeling(const Graph& g, const K33Labeling& l) {
  if (g.vertex_count() != 6 || g.edge_count() != 9)
    throw StructuralError("kleitman_check: graph is not K_{3,3}");
  const std::array<std::size_t, 6> all{l.a, l.b, l.c, l.zero, l.one, l.two};
  for (std::size_t i = 0; i < 6; ++i) {
    if (all[i] >= 6) throw StructuralError("kleitman_check: labeling uses a vertex out of range");
    for (std::size_t j = i + 1; j < 6; ++j)
      if (all[i] == all[j]) throw StructuralError("kleitman_check: labeling repeats a vertex");
  }
  for (auto x : {l.a, l.b, l.c})
    for (auto y : {l.zero, l.one, l.two}) labeled_edge(g, x, y, "kleitman_check");
}

}  // namespace detail

/// Spanning tree made of the edges at a and at 0.
inline SpanningForest kleitman_forest(const Graph& g, const K33Labeling& l = {}) {
  detail::require_k33_labeling(g, l);
  std::vector<std::size_t> edges;
  for (auto y : {l.zero, l.one, l.two}) edges.push_back(detail::labeled_edge(g, l.a, y, "kleitman_forest"));
  for (auto x : {l.b, l.c}) edges.push_back(detail::labeled_edge(g, x, l.zero, "kleitman_forest"));
  return forest_from_edges(g, edges, l.a);
}

/// y_b1 . y_c2 + y_c1 . y_b2 on an independently even drawing whose edges at a and 0 carry zero
/// vectors. Every valid input gives 1.
inline bool kleitman_check(const CrosscapDrawing& d, const K33Labeling& l = {}) {
  const Graph& g = d.graph;
  detail::require_k33_labeling(g, l);
  if (auto odd = first_odd_pair(d))
    throw StructuralError("kleitman_check: drawing is not independently even at edges " +
                          std::to_string(odd->first) + " and " + std::to_string(odd->second));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if ((ed.has(l.a) || ed.has(l.zero)) && !submatrix(d.y, e, 1, 0, d.h).is_zero())
      throw StructuralError("kleitman_check: tree edge " + std::to_string(e) + " (" +
                            std::to_string(ed.u) + "," + std::to_string(ed.v) +
                            ") has a nonzero crosscap vector");
  }
  const auto e = [&](std::size_t x, std::size_t y) { return detail::labeled_edge(g, x, y, "kleitman_check"); };
  return detail::dot(d.y, e(l.b, l.one), e(l.c, l.two)) != detail::dot(d.y, e(l.c, l.one), e(l.b, l.two));
}

/// Normalizes the Kleitman tree first, then checks.
inline bool kleitman_after_normalizing(const CrosscapDrawing& d, const K33Labeling& l = {}) {
  return kleitman_check(normalize_forest(d, kleitman_forest(d.graph, l)), l);
}

/// Span of the effect vectors of all vertex-edge moves with v not on e, over the independent
/// pairs (e < f) in row-major order. Rows of `basis` are reduced: each has a distinct leading pair.
struct MoveSpan {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  Gf2Matrix basis;
};

inline MoveSpan move_effect_span(const Graph& g) {
  MoveSpan s;
  const std::size_t k = g.edge_count();
  for (std::size_t e = 0; e < k; ++e)
    for (std::size_t f = e + 1; f < k; ++f)
      if (g.independent(e, f)) s.pairs.push_back({e, f});
  std::vector<Gf2Matrix> rows;
  std::vector<std::size_t> lead;
  const CrosscapDrawing zero{g, 0, Gf2Matrix(k, 0), Gf2Matrix(k, k)};
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (std::size_t e = 0; e < k; ++e) {
      if (g.edge(e).has(v)) continue;
      const CrosscapDrawing moved = vertex_edge_move(zero, v, e);
      Gf2Matrix r(1, s.pairs.size());
      for (std::size_t p = 0; p < s.pairs.size(); ++p)
        r.set(0, p, moved.base.get(s.pairs[p].first, s.pairs[p].second));
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (r.get(0, lead[i])) r = r + rows[i];
      std::size_t l = 0;
      while (l < s.pairs.size() && !r.get(0, l)) ++l;
      if (l == s.pairs.size()) continue;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].get(0, l)) rows[i] = rows[i] + r;
      rows.push_back(r);
      lead.push_back(l);
    }
  s.basis = rows.empty() ? Gf2Matrix(0, s.pairs.size()) : vconcat(rows);
  return s;
}

struct KmnBlockReport {
  std::size_t m = 0, n = 0;
  Gf2Matrix blocks;  // (m-1)(n-1) square, block (i1,i2) at rows (i1-1)(n-1), cols (i2-1)(n-1)
  bool tournaments_ok = false;           // every off-diagonal block is a tournament
  bool decomposition_ok = false;         // every off-diagonal block is B + D or B + J + D
  std::optional<Gf2Matrix> base;         // B, taken from block (1,2)
  std::vector<OffDiagonalBlock> structure;
  std::size_t rank = 0;
  std::size_t bound = 0;  // block_bound(m-1, n-1)
  bool bound_holds = false;
};

/// Star forest at u_0 and v_0 of K_{m,n} (u_i = i, v_j = m + j).
inline SpanningForest kmn_star_forest(std::size_t m, std::size_t n) {
  const Graph g = complete_bipartite(m, n);
  std::vector<std::size_t> edges;
  for (std::size_t j = 0; j < n; ++j) edges.push_back(j);
  for (std::size_t i = 1; i < m; ++i) edges.push_back(i * n);
  return forest_from_edges(g, edges, 0);
}

/// Gram block matrix a_{j1 j2} = y_{u_i1 v_j1} . y_{u_i2 v_j2} over 1 <= i <= m-1, 1 <= j <= n-1.
/// The drawing must be independently even on complete_bipartite(m, n) with the star forest at u_0
/// and v_0 normalized.
inline KmnBlockReport kmn_block_matrix(const CrosscapDrawing& d, std::size_t m, std::size_t n) {
  if (m < 3 || n < 2)
    throw DomainError("kmn_block_matrix: needs m >= 3 and n >= 2, got " + std::to_string(m) + " and " +
                      std::to_string(n));
  if (!(d.graph == complete_bipartite(m, n)))
    throw StructuralError("kmn_block_matrix: graph is not complete_bipartite(" + std::to_string(m) +
                          ", " + std::to_string(n) + ")");
  if (auto odd = first_odd_pair(d))
    throw StructuralError("kmn_block_matrix: drawing is not independently even at edges " +
                          std::to_string(odd->first) + " and " + std::to_string(odd->second));
  for (std::size_t e = 0; e < d.graph.edge_count(); ++e) {
    const bool star = e < n || e % n == 0;
    if (star && !submatrix(d.y, e, 1, 0, d.h).is_zero())
      throw StructuralError("kmn_block_matrix: star edge " + std::to_string(e) +
                            " has a nonzero crosscap vector");
  }
  const std::size_t bm = m - 1, bn = n - 1;
  KmnBlockReport r;
  r.m = m;
  r.n = n;
  r.blocks = Gf2Matrix(bm * bn, bm * bn);
  for (std::size_t i1 = 1; i1 < m; ++i1)
    for (std::size_t i2 = 1; i2 < m; ++i2)
      for (std::size_t j1 = 1; j1 < n; ++j1)
        for (std::size_t j2 = 1; j2 < n; ++j2)
          r.blocks.set((i1 - 1) * bn + j1 - 1, (i2 - 1) * bn + j2 - 1,
                       detail::dot(d.y, i1 * n + j1, i2 * n + j2));

  r.tournaments_ok = true;
  for (std::size_t i = 0; i < bm && r.tournaments_ok; ++i)
    for (std::size_t j = 0; j < bm; ++j)
      if (i != j && !is_tournament(submatrix(r.blocks, i * bn, bn, j * bn, bn))) {
        r.tournaments_ok = false;
        break;
      }

  if (r.tournaments_ok) {
    r.base = submatrix(r.blocks, 0, bn, bn, bn);
    for (std::size_t k = 0; k < bn; ++k) r.base->set(k, k, false);
    r.decomposition_ok = true;
    for (std::size_t i = 0; i < bm && r.decomposition_ok; ++i)
      for (std::size_t j = 0; j < bm; ++j) {
        if (i == j) continue;
        const Gf2Matrix residue = submatrix(r.blocks, i * bn, bn, j * bn, bn) + *r.base;
        int off = -1;
        bool uniform = true;
        for (std::size_t a = 0; a < bn && uniform; ++a)
          for (std::size_t b = 0; b < bn; ++b) {
            if (a == b) continue;
            const int v = residue.get(a, b) ? 1 : 0;
            if (off < 0) off = v;
            if (v != off) {
              uniform = false;
              break;
            }
          }
        if (!uniform) {
          r.decomposition_ok = false;
          break;
        }
        OffDiagonalBlock ob{i + 1, j + 1, off == 1, std::vector<bool>(bn)};
        for (std::size_t a = 0; a < bn; ++a) ob.diag_perturbation[a] = residue.get(a, a) != (off == 1);
        r.structure.push_back(std::move(ob));
      }
    if (!r.decomposition_ok) r.structure.clear();
  }
  r.rank = rank(r.blocks);
  r.bound = bn >= 1 ? block_bound(bm, bn) : 0;
  r.bound_holds = r.rank >= r.bound;
  return r;
}

struct Interval {
  long long lo = 0;
  long long hi = 0;
};

enum class InequalityStatus { holds, possible, refuted };

inline const char* to_string(InequalityStatus s) {
  switch (s) {
    case InequalityStatus::holds: return "holds";
    case InequalityStatus::possible: return "possible";
    default: return "refuted";
  }
}

struct InequalityCheck {
  std::string name;
  InequalityStatus status = InequalityStatus::possible;
  bool holds() const { return status == InequalityStatus::holds; }
};

struct AmalgamationInput {
  std::size_t k = 1;
  std::optional<Interval> g1, g2, g;  // g0
  std::optional<Interval> e1, e2, e;  // eg0
};

struct AmalgamationReport {
  AmalgamationInput input;
  std::optional<Interval> implied_g;  // bounds on g0(G) from the pieces
  std::optional<Interval> implied_e;  // bounds on eg0(G) from the pieces
  std::vector<InequalityCheck> inequalities_checked;
  bool any_refuted() const {
    return std::any_of(inequalities_checked.begin(), inequalities_checked.end(),
                       [](const InequalityCheck& c) { return c.status == InequalityStatus::refuted; });
  }
};

namespace detail {

inline void require_interval(const std::optional<Interval>& i, const char* name) {
  if (i && i->lo > i->hi)
    throw StructuralError(std::string("amalgamation_check: interval ") + name + " has lower bound " +
                          std::to_string(i->lo) + " above upper bound " + std::to_string(i->hi));
}

/// Status of lhs <= rhs where lhs ranges over [lo_l, hi_l] and rhs over [lo_r, hi_r].
inline InequalityStatus compare(long long lo_l, long long hi_l, long long lo_r, long long hi_r) {
  if (hi_l <= lo_r) return InequalityStatus::holds;
  if (lo_l > hi_r) return InequalityStatus::refuted;
  return InequalityStatus::possible;
}

}  // namespace detail

/// Checks g1+g2-(k+1) <= g <= g1+g2+1 and e1+e2-(2k-1) <= e <= e1+e2+2 over the given intervals.
inline AmalgamationReport amalgamation_check(const AmalgamationInput& in) {
  detail::require_interval(in.g1, "g1");
  detail::require_interval(in.g2, "g2");
  detail::require_interval(in.g, "g");
  detail::require_interval(in.e1, "e1");
  detail::require_interval(in.e2, "e2");
  detail::require_interval(in.e, "e");
  if (in.k < 1) throw StructuralError("amalgamation_check: k must be at least 1");
  const long long k = static_cast<long long>(in.k);
  AmalgamationReport r;
  r.input = in;
  if (in.g1 && in.g2) {
    const long long lo = in.g1->lo + in.g2->lo - (k + 1), hi = in.g1->hi + in.g2->hi - (k + 1);
    const long long ulo = in.g1->lo + in.g2->lo + 1, uhi = in.g1->hi + in.g2->hi + 1;
    r.implied_g = Interval{std::max(0LL, lo), uhi};
    if (in.g) {
      r.inequalities_checked.push_back({"a_lower", detail::compare(lo, hi, in.g->lo, in.g->hi)});
      r.inequalities_checked.push_back({"a_upper", detail::compare(in.g->lo, in.g->hi, ulo, uhi)});
    }
  }
  if (in.e1 && in.e2) {
    const long long lo = in.e1->lo + in.e2->lo - (2 * k - 1), hi = in.e1->hi + in.e2->hi - (2 * k - 1);
    const long long ulo = in.e1->lo + in.e2->lo + 2, uhi = in.e1->hi + in.e2->hi + 2;
    r.implied_e = Interval{std::max(0LL, lo), uhi};
    if (in.e) {
      r.inequalities_checked.push_back({"b_lower", detail::compare(lo, hi, in.e->lo, in.e->hi)});
      r.inequalities_checked.push_back({"b_upper", detail::compare(in.e->lo, in.e->hi, ulo, uhi)});
    }
  }
  return r;
}

/// k for G viewed as a 2-amalgamation at u and v: components of G - u - v, plus one if uv is an
/// edge.
inline std::size_t amalgamation_k(const Graph& g, std::size_t u, std::size_t v) {
  detail::require_vertex(g, u, "amalgamation_k");
  detail::require_vertex(g, v, "amalgamation_k");
  if (u == v) throw StructuralError("amalgamation_k: u and v must differ");
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> comp(n, SpanningForest::none);
  std::size_t l = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (s == u || s == v || comp[s] != SpanningForest::none) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = l;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (auto e : g.incident(x)) {
        const Edge& ed = g.edge(e);
        const std::size_t y = ed.u == x ? ed.v : ed.u;
        if (y == u || y == v || comp[y] != SpanningForest::none) continue;
        comp[y] = l;
        stack.push_back(y);
      }
    }
    ++l;
  }
  return l + (g.find_edge(u, v) ? 1 : 0);
}

struct ReducedAmalgamation {
  Graph graph;             // uv subdivided if present, then k-2 joining edges added
  std::size_t added_edges = 0;
  std::size_t g0_penalty = 0;   // +1 per added edge
  std::size_t eg0_penalty = 0;  // +2 per added edge
};

/// Rewrites G so that G - u - v has exactly two components: subdivides uv when present (the new
/// vertex forms its own component) and joins component representatives with k - 2 new edges.
inline ReducedAmalgamation reduce_amalgamation(const Graph& g, std::size_t u, std::size_t v) {
  const std::size_t k = amalgamation_k(g, u, v);
  std::vector<Edge> edges;
  std::size_t n = g.vertex_count();
  for (const Edge& e : g.edges()) {
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
      edges.push_back({u, n});
      edges.push_back({n, v});
      ++n;
    } else {
      edges.push_back(e);
    }
  }
  Graph sub(n, edges);
  // representatives: the smallest vertex of each component of sub - u - v
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> reps;
  for (std::size_t s = 0; s < n; ++s) {
    if (s == u || s == v || seen[s]) continue;
    reps.push_back(s);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (auto e : sub.incident(x)) {
        const Edge& ed = sub.edge(e);
        const std::size_t y = ed.u == x ? ed.v : ed.u;
        if (y == u || y == v || seen[y]) continue;
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  ReducedAmalgamation r;
  for (std::size_t i = 2; i < reps.size(); ++i) {
    edges.push_back({reps[1], reps[i]});
    ++r.added_edges;
  }
  (void)k;
  r.graph = Graph(n, edges);
  r.g0_penalty = r.added_edges;
  r.eg0_penalty = 2 * r.added_edges;
  return r;
}

struct ClaimRankReport {
  std::size_t lhs = 0;
  std::size_t rank_b = 0;
  bool holds = false;
  std::size_t rank_row1 = 0, rank_row4 = 0;  // rank[B11 B12], rank[B44 B43]
  std::size_t rank_b11 = 0, rank_b44 = 0;
};

/// Block order E1, F1, F2, E2. Blocks (E1,F2), (E1,E2), (F1,E2) and their transposes must be zero.
inline ClaimRankReport claim_rank_inequality_check(const Gf2Matrix& b, const std::array<std::size_t, 4>& sizes) {
  require_symmetric(b, "claim_rank_inequality_check");
  std::array<std::size_t, 5> off{};
  for (std::size_t i = 0; i < 4; ++i) off[i + 1] = off[i] + sizes[i];
  if (off[4] != b.rows())
    throw StructuralError("claim_rank_inequality_check: block sizes sum to " + std::to_string(off[4]) +
                          ", matrix has " + std::to_string(b.rows()) + " rows");
  static constexpr const char* names[4] = {"E1", "F1", "F2", "E2"};
  for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 2}, {0, 3}, {1, 3}})
    if (!submatrix(b, off[i], sizes[i], off[j], sizes[j]).is_zero())
      throw StructuralError(std::string("claim_rank_inequality_check: block (") + names[i] + "," +
                            names[j] + ") must be zero");
  ClaimRankReport r;
  r.rank_b11 = rank(submatrix(b, off[0], sizes[0], off[0], sizes[0]));
  r.rank_b44 = rank(submatrix(b, off[3], sizes[3], off[3], sizes[3]));
  r.rank_row1 = rank(submatrix(b, off[0], sizes[0], off[0], sizes[0] + sizes[1]));
  r.rank_row4 = rank(submatrix(b, off[3], sizes[3], off[2], sizes[2] + sizes[3]));
  r.lhs = 2 * (r.rank_row1 + r.rank_row4) - r.rank_b11 - r.rank_b44;
  r.rank_b = rank(b);
  r.holds = r.lhs <= r.rank_b;
  return r;
}

}  // namespace z2rank
