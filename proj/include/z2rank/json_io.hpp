#pragma once

/// JSON forms of matrices, drawings and search certificates. Needs nlohmann/json ("json.hpp").

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "z2rank/drawing.hpp"
#include "z2rank/errors.hpp"
#include "z2rank/gf2_matrix.hpp"
#include "z2rank/upper_bound_search.hpp"

namespace z2rank {

using json = nlohmann::ordered_json;

/// One '0'/'1' string per row.
inline json matrix_to_json(const Gf2Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(row_string(m, i));
  return rows;
}

namespace detail {

/// Line and column (1-based) of byte offset `pos` in `text`.
inline std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t pos) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw StructuralError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::size_t count_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw StructuralError(std::string("field \"") + key + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

inline Gf2Matrix bitstring_rows(const json& rows, std::size_t cols, const char* what) {
  if (!rows.is_array()) throw StructuralError(std::string(what) + " must be an array of bit strings");
  Gf2Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_string()) throw StructuralError(std::string(what) + " entries must be strings");
    const std::string s = rows[i].get<std::string>();
    if (s.size() != cols)
      throw StructuralError(std::string(what) + " row " + std::to_string(i) + " has length " +
                            std::to_string(s.size()) + ", expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) {
      if (s[c] != '0' && s[c] != '1')
        throw StructuralError(std::string(what) + " row " + std::to_string(i) +
                              " contains a character other than 0 or 1");
      m.set(i, c, s[c] == '1');
    }
  }
  return m;
}

}  // namespace detail

/// Parses JSON text; syntax errors become ParseError with line and column.
inline json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = detail::locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("invalid JSON", line, col);
  }
}

inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
  const std::size_t n = detail::count_field(j, "n");
  const json& es = detail::field(j, "edges");
  if (!es.is_array()) throw StructuralError("field \"edges\" must be an array");
  std::vector<Edge> edges;
  for (const auto& e : es) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
      throw StructuralError("every edge must be a pair of vertex indices");
    edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
  }
  return Graph(n, std::move(edges));
}

/// {n, edges, h, y: bit strings, base: independent pairs [i, j] with parity 1}
inline json drawing_to_json(const CrosscapDrawing& d) {
  json j = graph_to_json(d.graph);
  j["h"] = d.h;
  j["y"] = matrix_to_json(d.y);
  json base = json::array();
  for (std::size_t e = 0; e < d.graph.edge_count(); ++e)
    for (std::size_t f = e + 1; f < d.graph.edge_count(); ++f)
      if (d.graph.independent(e, f) && d.base.get(e, f)) base.push_back({e, f});
  j["base"] = base;
  return j;
}

inline CrosscapDrawing drawing_from_json(const json& j) {
  CrosscapDrawing d;
  d.graph = graph_from_json(j);
  const std::size_t k = d.graph.edge_count();
  d.h = detail::count_field(j, "h");
  const json& y = detail::field(j, "y");
  d.y = detail::bitstring_rows(y, d.h, "y");
  if (d.y.rows() != k)
    throw StructuralError("y has " + std::to_string(d.y.rows()) + " rows, graph has " +
                          std::to_string(k) + " edges");
  d.base = Gf2Matrix(k, k);
  const json& base = detail::field(j, "base");
  if (!base.is_array()) throw StructuralError("field \"base\" must be an array");
  for (const auto& p : base) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned())
      throw StructuralError("every base entry must be a pair of edge indices");
    const std::size_t e = p[0].get<std::size_t>(), f = p[1].get<std::size_t>();
    if (e >= k || f >= k) throw StructuralError("base pair refers to an edge out of range");
    if (!d.graph.independent(e, f))
      throw StructuralError("base pair (" + std::to_string(e) + "," + std::to_string(f) +
                            ") is not a pair of independent edges");
    d.base.set(e, f, true);
    d.base.set(f, e, true);
  }
  return d;
}

inline json certificate_to_json(const UpperBoundCertificate& c) {
  json moves = json::array();
  for (const Move& m : c.moves) moves.push_back({m.vertex, m.edge});
  return {{"graph", graph_to_json(c.graph)},
          {"bound_kind", to_string(c.bound_kind)},
          {"alternate", c.alternate},
          {"value", c.value},
          {"rank", c.rank},
          {"witness", matrix_to_json(c.witness)},
          {"crosscap_vectors", matrix_to_json(c.vectors)},
          {"move_sequence", moves},
          {"seed_only", c.seed_only},
          {"exact_scoring", c.exact_scoring},
          {"explored", c.explored}};
}

inline UpperBoundCertificate certificate_from_json(const json& j) {
  UpperBoundCertificate c;
  c.graph = graph_from_json(detail::field(j, "graph"));
  const std::size_t k = c.graph.edge_count();
  c.alternate = detail::field(j, "alternate").get<bool>();
  c.bound_kind = c.alternate ? BoundKind::g0 : BoundKind::eg0;
  c.value = detail::count_field(j, "value");
  c.rank = detail::count_field(j, "rank");
  c.witness = detail::bitstring_rows(detail::field(j, "witness"), k, "witness");
  const json& v = detail::field(j, "crosscap_vectors");
  const std::size_t h = v.empty() ? 0 : v[0].get<std::string>().size();
  c.vectors = detail::bitstring_rows(v, h, "crosscap_vectors");
  if (v.empty()) c.vectors = Gf2Matrix(k, 0);
  for (const auto& m : detail::field(j, "move_sequence")) {
    if (!m.is_array() || m.size() != 2) throw StructuralError("every move must be a pair [vertex, edge]");
    c.moves.push_back({m[0].get<std::size_t>(), m[1].get<std::size_t>()});
  }
  if (j.contains("seed_only")) c.seed_only = j.at("seed_only").get<bool>();
  if (j.contains("exact_scoring")) c.exact_scoring = j.at("exact_scoring").get<bool>();
  if (j.contains("explored")) c.explored = j.at("explored").get<std::size_t>();
  return c;
}

}  // namespace z2rank
