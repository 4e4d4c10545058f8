#pragma once

/// Beam search over vertex-edge moves from the convex drawing. Each visited drawing is scored by
/// the minimum rank of a (possibly alternate) matrix representing it, which upper-bounds eg0
/// (rank) or g0 (rank / 2). Only upper bounds are ever claimed.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "z2rank/drawing.hpp"
#include "z2rank/gf2_matrix.hpp"
#include "z2rank/pattern_completion.hpp"

namespace z2rank {

enum class BoundKind { g0, eg0 };

inline const char* to_string(BoundKind k) { return k == BoundKind::g0 ? "g0" : "eg0"; }

struct Move {
  std::size_t vertex = 0;
  std::size_t edge = 0;
  friend bool operator==(const Move&, const Move&) = default;
};

struct UpperBoundCertificate {
  Graph graph;
  Gf2Matrix witness;   // represents the drawing reached by `moves`
  Gf2Matrix vectors;   // edge_count x h crosscap vectors, witness == vectors * vectors^T
  std::vector<Move> moves;
  bool alternate = false;
  BoundKind bound_kind = BoundKind::eg0;
  std::size_t rank = 0;
  std::size_t value = 0;
  bool seed_only = false;     // nothing better than the convex drawing was found
  bool exact_scoring = true;  // no completion search was cut short by the node limit
  std::size_t explored = 0;   // drawings scored
};

struct SearchConfig {
  bool alternate = false;
  std::size_t budget = 100000;  // drawings scored
  std::size_t beam = 64;
  std::uint64_t seed = 0;
  std::size_t node_limit = default_completion_node_limit;  // per scored drawing
  std::size_t target = 0;  // stop once the value drops to this
};

namespace detail {

struct BaseHash {
  std::size_t operator()(const std::vector<std::uint64_t>& w) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : w) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

struct SearchState {
  CrosscapDrawing drawing;
  std::vector<Move> moves;
  std::size_t zero_fill_rank = 0;  // rank of the representing matrix with zero fill
  std::size_t odd_pairs = 0;
  std::uint64_t tie = 0;
};

inline std::size_t count_odd_pairs(const CrosscapDrawing& d) {
  std::size_t c = 0;
  for (std::size_t e = 0; e < d.graph.edge_count(); ++e)
    for (std::size_t f = e + 1; f < d.graph.edge_count(); ++f)
      if (d.base.get(e, f) && d.graph.independent(e, f)) ++c;
  return c;
}

inline bool state_better(const SearchState& a, const SearchState& b) {
  if (a.zero_fill_rank != b.zero_fill_rank) return a.zero_fill_rank < b.zero_fill_rank;
  if (a.odd_pairs != b.odd_pairs) return a.odd_pairs < b.odd_pairs;
  return a.tie < b.tie;
}

inline std::vector<std::uint64_t> base_key(const CrosscapDrawing& d) {
  const auto w = d.base.words();
  return {w.begin(), w.end()};
}

}  // namespace detail

/// The seed is scored exactly. Every later drawing is only asked for a completion of rank below
/// the best so far, which keeps each step cheap once a good certificate is known. The beam is
/// ordered by zero-fill rank, then by the number of oddly crossing independent pairs.
inline UpperBoundCertificate upper_bound_search(const Graph& g, const SearchConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const Gf2Matrix mask = independence_mask(g);
  const auto value_of = [&](std::size_t r) { return cfg.alternate ? r / 2 : r; };

  std::vector<Move> moves;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      if (!g.edge(e).has(v)) moves.push_back({v, e});

  detail::SearchState seed;
  seed.drawing = convex_base_drawing(g);
  seed.zero_fill_rank = rank(seed.drawing.base);
  seed.odd_pairs = detail::count_odd_pairs(seed.drawing);
  PatternCompletion best = min_rank_completion(mask, seed.drawing.base, cfg.alternate, cfg.node_limit);
  std::vector<Move> best_moves;
  bool exact = best.exact;
  std::size_t explored = 1;

  std::unordered_set<std::vector<std::uint64_t>, detail::BaseHash> visited;
  visited.insert(detail::base_key(seed.drawing));

  std::vector<detail::SearchState> layer{seed};
  while (!layer.empty() && explored < cfg.budget && value_of(best.rank) > cfg.target) {
    std::vector<detail::SearchState> next;
    for (const auto& st : layer) {
      std::vector<Move> order = moves;
      std::shuffle(order.begin(), order.end(), rng);
      for (const Move& mv : order) {
        if (explored >= cfg.budget || value_of(best.rank) <= cfg.target) break;
        CrosscapDrawing d = vertex_edge_move(st.drawing, mv.vertex, mv.edge);
        if (!visited.insert(detail::base_key(d)).second) continue;
        ++explored;
        detail::SearchState ns;
        ns.zero_fill_rank = rank(d.base);
        ns.odd_pairs = detail::count_odd_pairs(d);
        ns.moves = st.moves;
        ns.moves.push_back(mv);
        ns.tie = rng();
        auto imp = completion_below(mask, d.base, cfg.alternate, best.rank, cfg.node_limit);
        exact = exact && imp.complete;
        if (imp.found) {
          best = std::move(*imp.found);
          best_moves = ns.moves;
        }
        ns.drawing = std::move(d);
        next.push_back(std::move(ns));
      }
    }
    std::sort(next.begin(), next.end(), detail::state_better);
    if (next.size() > cfg.beam) next.resize(cfg.beam);
    layer = std::move(next);
  }

  UpperBoundCertificate c;
  c.graph = g;
  c.witness = best.witness;
  c.vectors = best.vectors;
  c.moves = best_moves;
  c.alternate = cfg.alternate;
  c.bound_kind = cfg.alternate ? BoundKind::g0 : BoundKind::eg0;
  c.rank = best.rank;
  c.value = value_of(c.rank);
  c.seed_only = best_moves.empty();
  c.exact_scoring = exact;
  c.explored = explored;
  return c;
}

struct ReplayReport {
  bool ok = false;
  std::string message;
};

/// Rebuilds the drawing from the move list and checks the certificate without any search state.
inline ReplayReport replay_certificate(const UpperBoundCertificate& c) {
  const auto fail = [](std::string m) { return ReplayReport{false, std::move(m)}; };
  const Graph& g = c.graph;
  const std::size_t k = g.edge_count();
  CrosscapDrawing d = convex_base_drawing(g);
  for (const Move& mv : c.moves) {
    if (mv.vertex >= g.vertex_count() || mv.edge >= k) return fail("move out of range");
    d = vertex_edge_move(d, mv.vertex, mv.edge);
  }
  if (c.witness.rows() != k || !is_symmetric(c.witness)) return fail("witness is not symmetric k x k");
  for (std::size_t e = 0; e < k; ++e)
    for (std::size_t f = 0; f < k; ++f)
      if (g.independent(e, f) && c.witness.get(e, f) != d.base.get(e, f))
        return fail("witness differs from the drawing at pair (" + std::to_string(e) + "," +
                    std::to_string(f) + ")");
  if (c.alternate && !is_alternate(c.witness)) return fail("witness is not alternate");
  const std::size_t r = rank(c.witness);
  if (r != c.rank) return fail("stated rank differs from the witness rank");
  if (c.value != (c.alternate ? r / 2 : r)) return fail("value does not follow from the rank");
  if (c.vectors.rows() != k || !(c.vectors * transpose(c.vectors) == c.witness))
    return fail("crosscap vectors do not reproduce the witness");
  if (!synthesize_drawing(d, transpose(c.vectors)).independently_even)
    return fail("synthesized drawing is not independently even");
  return {true, "ok"};
}

}  // namespace z2rank
