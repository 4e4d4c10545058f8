#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "z2rank/drawing.hpp"

using namespace z2rank;

namespace {

std::size_t independent_odd_pairs(const CrosscapDrawing& d) {
  std::size_t c = 0;
  for (std::size_t e = 0; e < d.graph.edge_count(); ++e)
    for (std::size_t f = e + 1; f < d.graph.edge_count(); ++f)
      if (d.graph.independent(e, f) && d.base.get(e, f)) ++c;
  return c;
}

std::size_t flipped_pairs(const CrosscapDrawing& a, const CrosscapDrawing& b) {
  std::size_t c = 0;
  for (std::size_t e = 0; e < a.graph.edge_count(); ++e)
    for (std::size_t f = e + 1; f < a.graph.edge_count(); ++f)
      if (a.base.get(e, f) != b.base.get(e, f)) ++c;
  return c;
}

Gf2Matrix vec(std::string_view bits) { return Gf2Matrix::from_rows({bits}); }

CrosscapDrawing with_vectors(const Graph& g, std::initializer_list<std::string_view> rows) {
  CrosscapDrawing d = convex_base_drawing(g);
  d.y = Gf2Matrix::from_rows(rows);
  d.h = d.y.cols();
  return d;
}

// Surface parity base + y.y on independent pairs, as a matrix.
Gf2Matrix surface_parities(const CrosscapDrawing& d) {
  Gf2Matrix s = representing_matrix(d) + gram_matrix(d);
  const Gf2Matrix mask = independence_mask(d.graph);
  for (std::size_t e = 0; e < s.rows(); ++e)
    for (std::size_t f = 0; f < s.cols(); ++f)
      if (!mask.get(e, f)) s.set(e, f, false);
  return s;
}

CrosscapDrawing random_drawing(std::mt19937_64& rng, const Graph& g, std::size_t h) {
  CrosscapDrawing d = convex_base_drawing(g);
  for (int k = 0; k < 20; ++k)
    d = vertex_edge_move(d, rng() % g.vertex_count(), rng() % g.edge_count());
  d.h = h;
  d.y = z2rank::testing::random_matrix(rng, g.edge_count(), h);
  return d;
}

}  // namespace

TEST(Graph, ValidationAndFormat) {
  EXPECT_THROW(Graph(3, {{0, 0}}), StructuralError);
  EXPECT_THROW(Graph(3, {{0, 3}}), StructuralError);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), StructuralError);
  const Graph g = parse_graph("4 4\n0 1\n1 2\n2 3\n3 0\n");
  EXPECT_EQ(g, cycle_graph(4));
  EXPECT_EQ(parse_graph(to_text(g)), g);
  try {
    parse_graph("3 2\n0 1\n1 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 1u);
  }
  EXPECT_THROW(parse_graph("3 2\n0 1\n"), ParseError);
  EXPECT_THROW(parse_graph("3 1\n0 7\n"), ParseError);
}

TEST(SpanningForest, DfsNonTreeEdgesAreBackEdges) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng() % 3 == 0) edges.push_back({i, j});
    const Graph g(n, edges);
    const SpanningForest f = dfs_forest(g);
    EXPECT_EQ(f.order.size(), n);
    const auto ancestor = [&](std::size_t a, std::size_t b) {
      for (std::size_t x = b; x != SpanningForest::none; x = f.parent[x])
        if (x == a) return true;
      return false;
    };
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      ASSERT_TRUE(ancestor(ed.u, ed.v) || ancestor(ed.v, ed.u));
    }
  }
}

TEST(SpanningForest, FromEdgesChecksShape) {
  const Graph k33 = complete_bipartite(3, 3);
  // star at u0 plus star at v0
  const std::vector<std::size_t> t{0, 1, 2, 3, 6};
  const SpanningForest f = forest_from_edges(k33, t);
  EXPECT_EQ(f.order.size(), 6u);
  EXPECT_THROW(forest_from_edges(k33, {0, 1, 3, 4}), StructuralError);
  EXPECT_THROW(forest_from_edges(k33, {0, 1, 3, 4, 2, 6}), StructuralError);
}

TEST(ConvexDrawing, Examples) {
  EXPECT_EQ(independent_odd_pairs(convex_base_drawing(complete_graph(4))), 1u);
  EXPECT_TRUE(convex_base_drawing(path_graph(3)).base.is_zero());
  EXPECT_EQ(independent_odd_pairs(convex_base_drawing(complete_graph(5))), 5u);
  EXPECT_EQ(independent_odd_pairs(convex_base_drawing(complete_bipartite(3, 3))) % 2, 1u);
  EXPECT_TRUE(convex_base_drawing(cycle_graph(6)).base.is_zero());
}

TEST(VertexEdgeMove, FlipCountsAndInvolution) {
  for (const Graph& g : {complete_bipartite(3, 3), complete_graph(5)}) {
    const CrosscapDrawing d = convex_base_drawing(g);
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const CrosscapDrawing m = vertex_edge_move(d, v, e);
        EXPECT_EQ(vertex_edge_move(m, v, e).base, d.base);
        EXPECT_EQ(flipped_pairs(d, m), g.edge(e).has(v) ? 0u : 2u);
      }
  }
  EXPECT_THROW(vertex_edge_move(convex_base_drawing(complete_graph(3)), 3, 0), StructuralError);
  EXPECT_THROW(vertex_edge_move(convex_base_drawing(complete_graph(3)), 0, 3), StructuralError);
}

TEST(SubsetPush, Examples) {
  const CrosscapDrawing k2 = with_vectors(path_graph(2), {"0"});
  const auto pushed = subset_push(k2, {true, false}, vec("1"));
  EXPECT_EQ(pushed.y, Gf2Matrix::from_rows({"1"}));
  EXPECT_EQ(subset_push(pushed, {true, false}, vec("1")).y, k2.y);
  EXPECT_EQ(subset_push(k2, {true, true}, vec("1")).y, k2.y);
  EXPECT_EQ(subset_push(k2, {true, false}, vec("0")).y, k2.y);
  EXPECT_THROW(subset_push(k2, {true, false}, vec("01")), StructuralError);
}

TEST(NormalizeForest, Examples) {
  const Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  const CrosscapDrawing s = with_vectors(star, {"0", "1", "0"});
  const auto f = dfs_forest(star);
  const auto n = normalize_forest(s, f, NormalizeMode::keep_base);
  EXPECT_TRUE(n.y.is_zero());
  EXPECT_EQ(n.base, s.base);

  const CrosscapDrawing p = with_vectors(path_graph(4), {"1", "1", "1"});
  const auto np = normalize_forest(p, dfs_forest(path_graph(4)), NormalizeMode::keep_base);
  EXPECT_TRUE(np.y.is_zero());

  const CrosscapDrawing z = with_vectors(complete_graph(4), {"0", "0", "0", "0", "0", "0"});
  EXPECT_EQ(normalize_forest(z, dfs_forest(complete_graph(4))).y, z.y);
}

TEST(NormalizeForest, SurfaceParityModePreservesIndependentParities) {
  std::mt19937_64 rng(10);
  for (const Graph& g : {complete_graph(5), complete_bipartite(3, 4), cycle_graph(5)}) {
    for (int trial = 0; trial < 30; ++trial) {
      const CrosscapDrawing d = random_drawing(rng, g, 1 + rng() % 4);
      const SpanningForest f = dfs_forest(g, rng() % g.vertex_count());
      const CrosscapDrawing n = normalize_forest(d, f);
      for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (f.tree_edge[e]) {
          ASSERT_TRUE(n.y.row_is_zero(e));
        }
      ASSERT_EQ(surface_parities(n), surface_parities(d));
      ASSERT_EQ(is_independently_even(n), is_independently_even(d));
    }
  }
}

TEST(NormalizeForest, KeepBaseLeavesBaseAlone) {
  const Graph g = complete_graph(4);
  CrosscapDrawing d = convex_base_drawing(g);
  d.h = 2;
  d.y = Gf2Matrix(6, 2);
  const auto r = normalize_forest(d, dfs_forest(g), NormalizeMode::keep_base);
  EXPECT_EQ(r.base, d.base);
  EXPECT_THROW(normalize_forest(d, dfs_forest(complete_graph(5))), StructuralError);
}

TEST(IndependentlyEven, Examples) {
  EXPECT_TRUE(is_independently_even(convex_base_drawing(cycle_graph(4))));
  EXPECT_FALSE(is_independently_even(convex_base_drawing(complete_graph(4))));
}

TEST(Orientable, Examples) {
  EXPECT_TRUE(is_orientable(with_vectors(cycle_graph(3), {"0", "0", "0"})));
  EXPECT_FALSE(is_orientable(with_vectors(cycle_graph(3), {"1", "0", "0"})));
  EXPECT_TRUE(is_orientable(with_vectors(cycle_graph(3), {"1", "1", "0"})));
}

TEST(GramMatrix, Examples) {
  const CrosscapDrawing z = convex_base_drawing(complete_graph(4));
  EXPECT_TRUE(gram_matrix(z).is_zero());
  const CrosscapDrawing p = with_vectors(path_graph(3), {"10", "11"});
  EXPECT_EQ(gram_matrix(p), Gf2Matrix::from_rows({"11", "10"}));
}

TEST(RepresentingMatrix, Examples) {
  EXPECT_TRUE(representing_matrix(convex_base_drawing(cycle_graph(4))).is_zero());
  const Gf2Matrix k4 = representing_matrix(convex_base_drawing(complete_graph(4)));
  EXPECT_EQ(k4.popcount(), 2u);
  EXPECT_TRUE(is_symmetric(k4));
  EXPECT_EQ(representing_matrix(convex_base_drawing(complete_graph(5))).popcount(), 10u);
}

TEST(RepresentingMatrix, EvenDrawingsMatchGramOnIndependentPairs) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = trial % 2 ? complete_graph(5) : complete_bipartite(3, 3);
    CrosscapDrawing d = random_drawing(rng, g, 0);
    const Gf2Matrix a = representing_matrix(d);
    const auto s = synthesize_drawing(d, gram_factor(a).factor);
    ASSERT_TRUE(s.independently_even);
    const Gf2Matrix mask = independence_mask(g);
    const Gf2Matrix gm = gram_matrix(s.drawing), rm = representing_matrix(s.drawing);
    for (std::size_t e = 0; e < a.rows(); ++e)
      for (std::size_t f = 0; f < a.rows(); ++f)
        if (mask.get(e, f)) {
          ASSERT_EQ(gm.get(e, f), rm.get(e, f));
        }
  }
}

TEST(EssentialRestrict, Examples) {
  const CrosscapDrawing k4 = convex_base_drawing(complete_graph(4));
  const Gf2Matrix a = representing_matrix(k4);
  const std::vector<std::size_t> all{0, 1, 2, 3, 4, 5};
  EXPECT_EQ(essential_restrict(a, all, k4), a);
  EXPECT_THROW(essential_restrict(a, {0, 1, 2}, k4), StructuralError);

  const CrosscapDrawing c4 = convex_base_drawing(cycle_graph(4));
  EXPECT_EQ(essential_restrict(representing_matrix(c4), {}, c4).rows(), 0u);
}

TEST(EssentialRestrict, ForestRowsAreInessentialAfterNormalizing) {
  std::mt19937_64 rng(21);
  const Graph g = complete_graph(5);
  for (int trial = 0; trial < 20; ++trial) {
    CrosscapDrawing d = random_drawing(rng, g, 0);
    const auto s = synthesize_drawing(d, gram_factor(representing_matrix(d)).factor);
    const SpanningForest f = dfs_forest(g);
    const CrosscapDrawing n = normalize_forest(s.drawing, f);
    ASSERT_TRUE(is_independently_even(n));
    std::vector<std::size_t> keep;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      if (!f.tree_edge[e]) keep.push_back(e);
    const Gf2Matrix r = essential_restrict(gram_matrix(n), keep, n);
    ASSERT_EQ(r.rows(), keep.size());
  }
}

TEST(Synthesize, Examples) {
  const CrosscapDrawing c4 = convex_base_drawing(cycle_graph(4));
  const auto z = synthesize_drawing(c4, Gf2Matrix(2, 4));
  EXPECT_TRUE(z.independently_even);
  EXPECT_EQ(z.drawing.h, 2u);
  EXPECT_THROW(synthesize_drawing(c4, Gf2Matrix(2, 3)), StructuralError);

  const CrosscapDrawing k33 = convex_base_drawing(complete_bipartite(3, 3));
  const Gf2Matrix a = representing_matrix(k33);
  const GramFactor gf = gram_factor(a);
  const auto s = synthesize_drawing(k33, gf.factor);
  EXPECT_TRUE(s.independently_even);
  EXPECT_LE(s.drawing.h, rank(a) + 1);
}

TEST(GenusUpperBounds, Examples) {
  const auto z = genus_upper_bounds(Gf2Matrix(3, 3));
  EXPECT_EQ(z.eg0_upper, 0u);
  EXPECT_EQ(z.g0_upper, 0u);
  const auto h = genus_upper_bounds(Gf2Matrix::from_rows({"01", "10"}));
  EXPECT_EQ(h.eg0_upper, 2u);
  EXPECT_EQ(h.g0_upper, 1u);
  const auto o = genus_upper_bounds(Gf2Matrix::from_rows({"1"}));
  EXPECT_EQ(o.eg0_upper, 1u);
  EXPECT_FALSE(o.g0_upper.has_value());
  EXPECT_THROW(genus_upper_bounds(Gf2Matrix::from_rows({"01", "00"})), StructuralError);
}
