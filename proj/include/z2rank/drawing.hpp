#pragma once

/// Combinatorial crosscap drawings: a plane drawing is represented only by the crossing parities of
/// its independent edge pairs (`base`), and passing edges through h crosscaps by per-edge crosscap
/// vectors y_e in GF(2)^h. The surface crossing parity of independent e, f is
/// base(e,f) + y_e . y_f.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "z2rank/congruence.hpp"
#include "z2rank/errors.hpp"
#include "z2rank/gf2_matrix.hpp"
#include "z2rank/text_scanner.hpp"

namespace z2rank {

struct Edge {
  std::size_t u = 0, v = 0;

  bool has(std::size_t x) const noexcept { return u == x || v == x; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph; edge order is part of the value (edge indices address matrices).
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t vertex_count, std::vector<Edge> edges)
      : n_(vertex_count), edges_(std::move(edges)), incident_(vertex_count) {
    std::vector<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (e.u >= n_ || e.v >= n_)
        throw StructuralError("graph: edge " + std::to_string(i) + " has an endpoint outside 0.." +
                              std::to_string(n_ == 0 ? 0 : n_ - 1));
      if (e.u == e.v) throw StructuralError("graph: edge " + std::to_string(i) + " is a loop");
      seen.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
      incident_[e.u].push_back(i);
      incident_[e.v].push_back(i);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw StructuralError("graph: duplicate edge");
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_.at(v); }

  bool adjacent(std::size_t e, std::size_t f) const {
    const Edge &a = edges_[e], &b = edges_[f];
    return a.has(b.u) || a.has(b.v);
  }
  /// Distinct edges without a common endpoint.
  bool independent(std::size_t e, std::size_t f) const { return e != f && !adjacent(e, f); }

  std::optional<std::size_t> find_edge(std::size_t u, std::size_t v) const {
    if (u >= n_) return std::nullopt;
    for (auto i : incident_[u])
      if (edges_[i].has(v)) return i;
    return std::nullopt;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, std::move(e));
}

/// Parts u_0..u_{m-1} = 0..m-1 and v_0..v_{n-1} = m..m+n-1; edge u_i v_j has index i*n + j.
inline Graph complete_bipartite(std::size_t m, std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) e.push_back({i, m + j});
  return Graph(m + n, std::move(e));
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph(n, std::move(e));
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, std::move(e));
}

/// "n m" followed by m lines "u v".
inline Graph parse_graph(std::string_view text) {
  TextScanner in(text);
  const std::size_t n = in.next_count("vertex count");
  const std::size_t m = in.next_count("edge count");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    TextScanner probe = in;
    const auto tok = probe.next("edge endpoint");
    const std::size_t u = in.next_count("edge endpoint");
    const std::size_t v = in.next_count("edge endpoint");
    if (u >= n || v >= n)
      throw ParseError("edge " + std::to_string(i) + " endpoint out of range", tok.line, tok.column);
    if (u == v) throw ParseError("edge " + std::to_string(i) + " is a loop", tok.line, tok.column);
    for (std::size_t k = 0; k < edges.size(); ++k)
      if ((edges[k].u == u && edges[k].v == v) || (edges[k].u == v && edges[k].v == u))
        throw ParseError("edge " + std::to_string(i) + " repeats edge " + std::to_string(k),
                         tok.line, tok.column);
    edges.push_back({u, v});
  }
  in.expect_end();
  return Graph(n, std::move(edges));
}

inline std::string to_text(const Graph& g) {
  std::string s = std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const auto& e : g.edges()) s += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return s;
}

/// Depth-first spanning forest. Every non-tree edge joins a vertex to one of its ancestors.
struct SpanningForest {
  static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

  std::vector<std::size_t> parent;       // none for roots
  std::vector<std::size_t> parent_edge;  // none for roots
  std::vector<std::size_t> roots;
  std::vector<std::size_t> order;  // preorder
  std::vector<bool> tree_edge;     // per edge

  bool is_tree_edge(std::size_t e) const { return tree_edge.at(e); }
};

/// Iterative DFS; roots are taken in increasing vertex order, neighbours in incidence order.
/// `root_first` (if given) is explored first.
inline SpanningForest dfs_forest(const Graph& g, std::optional<std::size_t> root_first = {}) {
  const std::size_t n = g.vertex_count();
  SpanningForest f;
  f.parent.assign(n, SpanningForest::none);
  f.parent_edge.assign(n, SpanningForest::none);
  f.tree_edge.assign(g.edge_count(), false);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> starts;
  if (root_first) {
    if (*root_first >= n) throw StructuralError("dfs_forest: root out of range");
    starts.push_back(*root_first);
  }
  for (std::size_t v = 0; v < n; ++v) starts.push_back(v);

  for (auto r : starts) {
    if (seen[r]) continue;
    seen[r] = true;
    f.roots.push_back(r);
    f.order.push_back(r);
    std::vector<std::pair<std::size_t, std::size_t>> stack{{r, 0}};
    while (!stack.empty()) {
      auto& [v, k] = stack.back();
      const auto& inc = g.incident(v);
      if (k == inc.size()) {
        stack.pop_back();
        continue;
      }
      const std::size_t e = inc[k++];
      const Edge& ed = g.edge(e);
      const std::size_t w = ed.u == v ? ed.v : ed.u;
      if (seen[w]) continue;
      seen[w] = true;
      f.parent[w] = v;
      f.parent_edge[w] = e;
      f.tree_edge[e] = true;
      f.order.push_back(w);
      stack.emplace_back(w, 0);
    }
  }
  return f;
}

/// Spanning forest made of the given edges (checked to be acyclic and spanning per component of
/// the graph), rooted at `root` and then at the smallest unreached vertex.
inline SpanningForest forest_from_edges(const Graph& g, const std::vector<std::size_t>& edges,
                                        std::size_t root = 0) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto e : edges) {
    if (e >= g.edge_count()) throw StructuralError("forest_from_edges: edge index out of range");
    adj[g.edge(e).u].push_back(e);
    adj[g.edge(e).v].push_back(e);
  }
  SpanningForest f;
  f.parent.assign(n, SpanningForest::none);
  f.parent_edge.assign(n, SpanningForest::none);
  f.tree_edge.assign(g.edge_count(), false);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> starts;
  if (root < n) starts.push_back(root);
  for (std::size_t v = 0; v < n; ++v) starts.push_back(v);
  std::size_t used = 0;
  for (auto r : starts) {
    if (seen[r]) continue;
    seen[r] = true;
    f.roots.push_back(r);
    f.order.push_back(r);
    std::vector<std::size_t> stack{r};
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (auto e : adj[v]) {
        const Edge& ed = g.edge(e);
        const std::size_t w = ed.u == v ? ed.v : ed.u;
        if (f.parent_edge[v] == e) continue;
        if (seen[w]) throw StructuralError("forest_from_edges: edges contain a cycle");
        seen[w] = true;
        f.parent[w] = v;
        f.parent_edge[w] = e;
        f.tree_edge[e] = true;
        ++used;
        f.order.push_back(w);
        stack.push_back(w);
      }
    }
  }
  if (used != edges.size()) throw StructuralError("forest_from_edges: repeated edges");
  // spanning: every graph edge must stay inside one tree
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    std::size_t a = g.edge(e).u, b = g.edge(e).v;
    while (f.parent[a] != SpanningForest::none) a = f.parent[a];
    while (f.parent[b] != SpanningForest::none) b = f.parent[b];
    if (a != b)
      throw StructuralError("forest_from_edges: forest does not span the component of edge " +
                            std::to_string(e));
  }
  return f;
}

/// Crosscap vectors are the rows of `y` (edge_count x h); `base` is symmetric over edges with
/// zero diagonal, and only its independent-pair entries carry meaning (adjacent entries stay 0).
struct CrosscapDrawing {
  Graph graph;
  std::size_t h = 0;
  Gf2Matrix y;
  Gf2Matrix base;
};

namespace detail {

inline bool dot(const Gf2Matrix& y, std::size_t e, std::size_t f) {
  const auto a = y.row(e), b = y.row(f);
  unsigned acc = 0;
  for (std::size_t k = 0; k < a.size(); ++k) acc ^= static_cast<unsigned>(std::popcount(a[k] & b[k]));
  return acc & 1U;
}

inline bool interleave(const Edge& e, const Edge& f) {
  const std::size_t a = std::min(e.u, e.v), b = std::max(e.u, e.v);
  const bool c_in = f.u > a && f.u < b, d_in = f.v > a && f.v < b;
  return c_in != d_in;
}

inline void require_vertex(const Graph& g, std::size_t v, const char* op) {
  if (v >= g.vertex_count())
    throw StructuralError(std::string(op) + ": vertex " + std::to_string(v) + " out of range");
}

inline void require_edge(const Graph& g, std::size_t e, const char* op) {
  if (e >= g.edge_count())
    throw StructuralError(std::string(op) + ": edge " + std::to_string(e) + " out of range");
}

}  // namespace detail

/// Vertices in convex position in the order 0..n-1, edges straight: independent edges cross iff
/// their endpoints interleave.
inline CrosscapDrawing convex_base_drawing(const Graph& g) {
  const std::size_t k = g.edge_count();
  CrosscapDrawing d{g, 0, Gf2Matrix(k, 0), Gf2Matrix(k, k)};
  for (std::size_t e = 0; e < k; ++e)
    for (std::size_t f = e + 1; f < k; ++f)
      if (g.independent(e, f) && detail::interleave(g.edge(e), g.edge(f))) {
        d.base.set(e, f, true);
        d.base.set(f, e, true);
      }
  return d;
}

/// Drags edge e over vertex v: flips base(e,f) for every edge f at v independent of e.
inline CrosscapDrawing vertex_edge_move(const CrosscapDrawing& d, std::size_t v, std::size_t e) {
  detail::require_vertex(d.graph, v, "vertex_edge_move");
  detail::require_edge(d.graph, e, "vertex_edge_move");
  CrosscapDrawing out = d;
  for (auto f : d.graph.incident(v))
    if (d.graph.independent(e, f)) {
      out.base.flip(e, f);
      out.base.flip(f, e);
    }
  return out;
}

/// y_e += w for every edge with exactly one endpoint in s.
inline CrosscapDrawing subset_push(const CrosscapDrawing& d, const std::vector<bool>& s,
                                   const Gf2Matrix& w) {
  if (w.rows() != 1 || w.cols() != d.h)
    throw StructuralError("subset_push: vector has length " + std::to_string(w.cols()) +
                          ", drawing has h = " + std::to_string(d.h));
  if (s.size() != d.graph.vertex_count())
    throw StructuralError("subset_push: vertex set has the wrong length");
  CrosscapDrawing out = d;
  for (std::size_t e = 0; e < d.graph.edge_count(); ++e) {
    const Edge& ed = d.graph.edge(e);
    if (s[ed.u] == s[ed.v]) continue;
    auto row = out.y.row(e);
    const auto wr = w.row(0);
    for (std::size_t k = 0; k < row.size(); ++k) row[k] ^= wr[k];
  }
  return out;
}

enum class NormalizeMode {
  keep_base,            // pure subset pushes; base untouched
  keep_surface_parity,  // pushes plus compensating vertex-edge moves keeping base + y.y fixed
};

/// Makes every forest edge's crosscap vector zero by pushing, for each tree edge (parent u,
/// child v), the subtree under v by the current y_uv.
///
/// keep_base changes base + y_e.y_f on independent pairs in general. keep_surface_parity pushes
/// the subtree one vertex x at a time and, after each push by w, applies vertex_edge_move(x, f)
/// for every edge f not at x with w.y_f = 1, which keeps every independent surface parity.
inline CrosscapDrawing normalize_forest(const CrosscapDrawing& d, const SpanningForest& f,
                                        NormalizeMode mode = NormalizeMode::keep_surface_parity) {
  const Graph& g = d.graph;
  const std::size_t n = g.vertex_count();
  if (f.parent.size() != n || f.tree_edge.size() != g.edge_count())
    throw StructuralError("normalize_forest: forest does not match the graph");
  for (std::size_t v = 0; v < n; ++v) {
    if (f.parent[v] == SpanningForest::none) continue;
    const std::size_t e = f.parent_edge[v];
    if (e >= g.edge_count() || !g.edge(e).has(v) || !g.edge(e).has(f.parent[v]))
      throw StructuralError("normalize_forest: parent edge of vertex " + std::to_string(v) +
                            " is inconsistent");
  }
  if (f.order.size() != n) throw StructuralError("normalize_forest: forest does not span the graph");

  std::vector<std::vector<std::size_t>> children(n);
  for (auto v : f.order)
    if (f.parent[v] != SpanningForest::none) children[f.parent[v]].push_back(v);

  CrosscapDrawing out = d;
  for (auto v : f.order) {
    if (f.parent[v] == SpanningForest::none) continue;
    const std::size_t te = f.parent_edge[v];
    const Gf2Matrix w = submatrix(out.y, te, 1, 0, out.h);
    if (w.is_zero()) continue;
    std::vector<std::size_t> subtree{v};
    for (std::size_t k = 0; k < subtree.size(); ++k)
      for (auto c : children[subtree[k]]) subtree.push_back(c);
    if (mode == NormalizeMode::keep_base) {
      std::vector<bool> s(n, false);
      for (auto x : subtree) s[x] = true;
      out = subset_push(out, s, w);
      continue;
    }
    for (auto x : subtree) {
      std::vector<bool> s(n, false);
      s[x] = true;
      out = subset_push(out, s, w);
      Gf2Matrix wy(1, out.h);
      for (std::size_t ff = 0; ff < g.edge_count(); ++ff) {
        if (g.edge(ff).has(x)) continue;
        bool p = false;
        for (std::size_t k = 0; k < out.h; ++k) p ^= w.get(0, k) && out.y.get(ff, k);
        if (p) out = vertex_edge_move(out, x, ff);
      }
    }
  }
  return out;
}

/// base(e,f) == y_e . y_f for every independent pair.
inline bool is_independently_even(const CrosscapDrawing& d) {
  const std::size_t k = d.graph.edge_count();
  for (std::size_t e = 0; e < k; ++e)
    for (std::size_t f = e + 1; f < k; ++f)
      if (d.graph.independent(e, f) && d.base.get(e, f) != detail::dot(d.y, e, f)) return false;
  return true;
}

/// First independent pair (e < f) whose surface parity is odd.
inline std::optional<std::pair<std::size_t, std::size_t>> first_odd_pair(const CrosscapDrawing& d) {
  const std::size_t k = d.graph.edge_count();
  for (std::size_t e = 0; e < k; ++e)
    for (std::size_t f = e + 1; f < k; ++f)
      if (d.graph.independent(e, f) && d.base.get(e, f) != detail::dot(d.y, e, f))
        return std::make_pair(e, f);
  return std::nullopt;
}

/// Sum of y over every fundamental cycle of a DFS forest is zero.
inline bool is_orientable(const CrosscapDrawing& d) {
  const Graph& g = d.graph;
  const SpanningForest f = dfs_forest(g);
  Gf2Matrix pot(g.vertex_count(), d.h);  // sum of y along the tree path from the root
  for (auto v : f.order) {
    if (f.parent[v] == SpanningForest::none) continue;
    auto row = pot.row(v);
    const auto pr = pot.row(f.parent[v]);
    const auto yr = d.y.row(f.parent_edge[v]);
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = pr[k] ^ yr[k];
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (f.tree_edge[e]) continue;
    const Gf2Matrix& cp = pot;
    const auto a = cp.row(g.edge(e).u), b = cp.row(g.edge(e).v), y = d.y.row(e);
    for (std::size_t k = 0; k < a.size(); ++k)
      if ((a[k] ^ b[k] ^ y[k]) != 0) return false;
  }
  return true;
}

/// Entry (e,f) = y_e . y_f.
inline Gf2Matrix gram_matrix(const CrosscapDrawing& d) {
  const std::size_t k = d.graph.edge_count();
  Gf2Matrix g(k, k);
  for (std::size_t e = 0; e < k; ++e)
    for (std::size_t f = e; f < k; ++f)
      if (detail::dot(d.y, e, f)) {
        g.set(e, f, true);
        g.set(f, e, true);
      }
  return g;
}

enum class AdjacentFill { zero, gram };

/// Matrix representing the plane drawing: independent entries are base(e,f); adjacent and
/// diagonal entries are 0 or the Gram values y_e . y_f.
inline Gf2Matrix representing_matrix(const CrosscapDrawing& d, AdjacentFill fill = AdjacentFill::zero) {
  const std::size_t k = d.graph.edge_count();
  Gf2Matrix a = fill == AdjacentFill::gram ? gram_matrix(d) : Gf2Matrix(k, k);
  for (std::size_t e = 0; e < k; ++e)
    for (std::size_t f = 0; f < k; ++f)
      if (d.graph.independent(e, f)) a.set(e, f, d.base.get(e, f));
  return a;
}

/// Mask of the entries a representing matrix must match: 1 on independent pairs.
inline Gf2Matrix independence_mask(const Graph& g) {
  const std::size_t k = g.edge_count();
  Gf2Matrix m(k, k);
  for (std::size_t e = 0; e < k; ++e)
    for (std::size_t f = 0; f < k; ++f)
      if (g.independent(e, f)) m.set(e, f, true);
  return m;
}

/// Principal submatrix of `a` on `keep`, allowed only when every independent pair touching a
/// dropped edge crosses evenly in the plane drawing.
inline Gf2Matrix essential_restrict(const Gf2Matrix& a, const std::vector<std::size_t>& keep,
                                    const CrosscapDrawing& d) {
  const std::size_t k = d.graph.edge_count();
  if (a.rows() != k || a.cols() != k)
    throw StructuralError("essential_restrict: matrix size does not match the edge count");
  std::vector<bool> kept(k, false);
  for (auto e : keep) {
    detail::require_edge(d.graph, e, "essential_restrict");
    kept[e] = true;
  }
  for (std::size_t e = 0; e < k; ++e) {
    if (kept[e]) continue;
    for (std::size_t f = 0; f < k; ++f)
      if (d.graph.independent(e, f) && d.base.get(e, f))
        throw StructuralError("essential_restrict: dropped edge " + std::to_string(e) +
                              " crosses edge " + std::to_string(f) + " oddly");
  }
  return principal_submatrix(a, keep);
}

struct SynthesisResult {
  CrosscapDrawing drawing;
  bool independently_even = false;
};

/// Pulls edge e through crosscap i whenever factor(i, e) = 1.
inline SynthesisResult synthesize_drawing(const CrosscapDrawing& plane, const Gf2Matrix& factor) {
  if (plane.h != 0) throw StructuralError("synthesize_drawing: input drawing has crosscaps");
  if (factor.cols() != plane.graph.edge_count())
    throw StructuralError("synthesize_drawing: factor has " + std::to_string(factor.cols()) +
                          " columns, graph has " + std::to_string(plane.graph.edge_count()) +
                          " edges");
  SynthesisResult r;
  r.drawing = plane;
  r.drawing.h = factor.rows();
  r.drawing.y = transpose(factor);
  r.independently_even = is_independently_even(r.drawing);
  return r;
}

struct GenusUpperBounds {
  std::size_t eg0_upper = 0;
  std::optional<std::size_t> g0_upper;
};

inline GenusUpperBounds genus_upper_bounds(const Gf2Matrix& a) {
  require_symmetric(a, "genus_upper_bounds");
  GenusUpperBounds b;
  b.eg0_upper = rank(a);
  if (is_alternate(a)) b.g0_upper = b.eg0_upper / 2;
  return b;
}

}  // namespace z2rank
