// z2rank command line: one subcommand per pipeline, JSON or table reports.
//
// Exit status: 0 success, 1 a derived invariant failed on this input, 2 input error.

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "z2rank/congruence.hpp"
#include "z2rank/drawing.hpp"
#include "z2rank/errors.hpp"
#include "z2rank/genus_bounds.hpp"
#include "z2rank/json_io.hpp"
#include "z2rank/matrix_io.hpp"
#include "z2rank/partial_minrank.hpp"
#include "z2rank/tournament.hpp"
#include "z2rank/upper_bound_search.hpp"

#ifndef Z2RANK_VERSION
#define Z2RANK_VERSION "unknown"
#endif

namespace {

using namespace z2rank;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  std::size_t budget = 100000;
  std::size_t beam = 64;
  std::size_t oracle_bits = default_oracle_bits;
  std::string format = "json";
  std::string output;
  json options = json::object();  // subcommand-specific settings, echoed in the report
};

struct Report {
  json result = json::object();
  bool invariant_ok = true;
  std::string table;  // custom table rendering; empty means key/value lines
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
auto parse_file(const std::string& path, F&& parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const StructuralError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

Gf2Matrix load_matrix(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return parse_matrix(t); });
}

json load_json(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return parse_json(t); });
}

json interval_json(const Interval& i) { return json::array({i.lo, i.hi}); }

// ---------------------------------------------------------------------------

Report run_rank(const RunConfig& cfg) {
  const Gf2Matrix a = load_matrix(cfg.inputs.at(0));
  Report r;
  r.result = {{"rows", a.rows()}, {"cols", a.cols()}, {"rank", rank(a)}};
  if (a.is_square()) {
    r.result["symmetric"] = is_symmetric(a);
    r.result["alternate"] = is_alternate(a);
  }
  return r;
}

Report run_factor(const RunConfig& cfg) {
  const Gf2Matrix a = load_matrix(cfg.inputs.at(0));
  if (!a.is_square() || !is_symmetric(a)) throw InputError(cfg.inputs[0] + ": matrix is not symmetric");
  const GramFactor g = gram_factor(a);
  const bool reproduces = transpose(g.factor) * g.factor == a;
  const bool alt = is_alternate(a);
  const bool size_ok = g.factor_rank == g.input_rank || (alt && g.factor_rank == g.input_rank + 1);
  Report r;
  r.result = {{"input_rank", g.input_rank},
              {"factor_rank", g.factor_rank},
              {"alternate", alt},
              {"factor_rows", g.factor.rows()},
              {"factor", matrix_to_json(g.factor)},
              {"reproduces_input", reproduces}};
  r.invariant_ok = reproduces && size_ok;
  return r;
}

json completion_json(const CompletionResult& c) {
  json w = json::array();
  for (const auto& m : c.witnesses) w.push_back(matrix_to_json(m));
  return {{"value", c.value}, {"kind", to_string(c.kind)}, {"achieved_rank", c.achieved_rank},
          {"witnesses", w}};
}

Report run_minrank(const RunConfig& cfg, bool alternate) {
  const PartialSymmetricMatrix p =
      parse_file(cfg.inputs.at(0), [](const std::string& t) { return parse_partial_matrix(t); });
  const auto unknown = p.unknown_blocks();
  const std::size_t k = p.block_count();
  Report r;
  r.result["block_sizes"] = p.block_sizes();
  r.result["unknown_blocks"] = unknown;

  std::optional<CompletionResult> closed;
  std::string method = "none";
  if (!alternate) {
    if (k == 2 && unknown == std::vector<std::size_t>{1}) {
      closed = minrank_corner(p.block(0, 0), p.block(0, 1));
      method = "corner";
    } else if (k == 2 && unknown == std::vector<std::size_t>{0, 1}) {
      closed = minrank_two_diag(p.block(0, 1));
      method = "two_diag";
    } else if (k == 3 && unknown == std::vector<std::size_t>{1, 2}) {
      closed = minrank_three_upper(p.block(0, 0), p.block(0, 1), p.block(0, 2), p.block(1, 2));
      method = "three_upper";
    }
  }
  r.result["closed_form"] = method;
  if (closed) r.result["closed_form_result"] = completion_json(*closed);

  std::optional<CompletionResult> oracle;
  try {
    oracle = brute_force_minrank(p, alternate, cfg.oracle_bits);
  } catch (const CapacityError& e) {
    if (!closed) throw InputError(std::string(e.what()) + "; raise --oracle-bits");
    r.result["oracle_skipped"] = e.what();
  }
  if (oracle) r.result["oracle_result"] = completion_json(*oracle);

  if (closed) {
    const auto w = p.substitute(closed->witnesses);
    const bool witness_ok = closed->kind == CompletionKind::exact ? rank(w) == closed->value
                                                                  : rank(w) <= closed->value;
    r.invariant_ok = witness_ok;
    if (oracle) {
      r.invariant_ok = r.invariant_ok && (closed->kind == CompletionKind::exact
                                              ? closed->value == oracle->value
                                              : oracle->value <= closed->value);
      r.result["tight"] = closed->value == oracle->value;
    }
  }
  r.result["value"] = oracle ? oracle->value : closed->value;
  return r;
}

Report run_tournament(const RunConfig& cfg, std::optional<std::size_t> blocks,
                      const std::vector<std::size_t>& generate, std::size_t count,
                      const std::string& fill) {
  Report r;
  if (!generate.empty()) {
    if (generate.size() != 2) throw InputError("--generate takes M N");
    const std::size_t m = generate[0], n = generate[1];
    const DiagonalFill df = fill == "arbitrary" ? DiagonalFill::arbitrary : DiagonalFill::gram;
    std::size_t violations = 0, tail_violations = 0, min_margin = SIZE_MAX;
    json ranks = json::array();
    for (std::size_t i = 0; i < count; ++i) {
      const auto inst = generate_instance(m, n, cfg.seed + i, df);
      const auto rep = verify_block_bound(inst);
      violations += !rep.holds;
      tail_violations += !rep.proof_tail_holds;
      if (rep.holds) min_margin = std::min(min_margin, rep.rank - rep.bound_stmt);
      ranks.push_back(rep.rank);
    }
    r.result = {{"m", m},
                {"n", n},
                {"count", count},
                {"bound_stmt", block_bound(m, n)},
                {"bound_proof_tail", block_bound_proof_tail(m, n)},
                {"violations", violations},
                {"proof_tail_violations", tail_violations},
                {"ranks", ranks}};
    if (min_margin != SIZE_MAX) r.result["min_margin"] = min_margin;
    r.invariant_ok = violations == 0;
    return r;
  }
  if (cfg.inputs.empty()) throw InputError("tournament-verify needs a matrix file or --generate M N");
  const Gf2Matrix a = load_matrix(cfg.inputs[0]);
  if (blocks) {
    const std::size_t m = *blocks;
    if (m < 2 || a.rows() % m != 0 || !a.is_square())
      throw InputError(cfg.inputs[0] + ": matrix is not an " + std::to_string(m) + "x" +
                       std::to_string(m) + " grid of square blocks");
    const std::size_t n = a.rows() / m;
    Gf2Matrix base = submatrix(a, 0, n, n, n);
    try {
      const auto rep = verify_block_bound(m, n, base, a);
      r.result = {{"m", m},
                  {"n", n},
                  {"rank", rep.rank},
                  {"bound_stmt", rep.bound_stmt},
                  {"bound_proof_tail", rep.bound_proof_tail},
                  {"holds", rep.holds},
                  {"proof_tail_holds", rep.proof_tail_holds}};
      r.invariant_ok = rep.holds;
    } catch (const StructuralError& e) {
      throw InputError(cfg.inputs[0] + ": " + e.what());
    }
    return r;
  }
  if (!a.is_square() || !is_tournament(a)) throw InputError(cfg.inputs[0] + ": not a tournament matrix");
  const auto rep = decaen_check(a);
  r.result = {{"n", rep.n}, {"rank", rep.rank}, {"bound", rep.bound}, {"holds", rep.holds}};
  r.invariant_ok = rep.holds;
  return r;
}

json kmn_json(const KmnBoundReport& k) {
  return {{"m", k.m},
          {"n", k.n},
          {"g_ringel", k.g_ringel},
          {"eg_ringel", k.eg_ringel},
          {"g0_lower", k.g0_lower},
          {"eg0_lower", k.eg0_lower},
          {"g0_raw", to_string(k.g0_raw)},
          {"eg0_raw", to_string(k.eg0_raw)},
          {"ratio", to_string(k.ratio)}};
}

bool kmn_consistent(const KmnBoundReport& k) {
  bool ok = k.g0_lower <= k.g_ringel && k.eg0_lower <= k.eg_ringel;
  if (k.m == k.n) {
    // ratio >= 1 - 6/n
    const long long n = static_cast<long long>(k.n);
    ok = ok && Rational::make(n - 6, n) <= k.ratio;
  }
  return ok;
}

Report run_kmn_bounds(std::size_t m, std::size_t n) {
  Report r;
  const auto k = thm1_lower_bounds(m, n);
  r.result = kmn_json(k);
  r.invariant_ok = kmn_consistent(k);
  return r;
}

Report run_kmn_sweep(std::size_t max_n) {
  Report r;
  json rows = json::array();
  std::ostringstream t;
  t << "  m   n  g_ringel  g0_lower  eg_ringel  eg0_lower  ratio\n";
  for (std::size_t m = 3; m <= max_n; ++m)
    for (std::size_t n = m; n <= max_n; ++n) {
      const auto k = thm1_lower_bounds(m, n);
      rows.push_back(kmn_json(k));
      r.invariant_ok = r.invariant_ok && kmn_consistent(k);
      char line[128];
      std::snprintf(line, sizeof line, "%3zu %3zu %9zu %9zu %10zu %10zu  %s\n", m, n, k.g_ringel,
                    k.g0_lower, k.eg_ringel, k.eg0_lower, to_string(k.ratio).c_str());
      t << line;
    }
  r.result = {{"max", max_n}, {"rows", rows}};
  r.table = t.str();
  return r;
}

Report run_kleitman(const RunConfig& cfg, const std::vector<std::size_t>& labels) {
  Report r;
  if (cfg.inputs.empty()) {
    // exhaust the move-reachable parity space of K_{3,3}
    const Graph g = complete_bipartite(3, 3);
    const MoveSpan span = move_effect_span(g);
    const CrosscapDrawing seed = convex_base_drawing(g);
    std::uint64_t odd = 0;
    const std::size_t dim = span.basis.rows();
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << dim); ++code) {
      unsigned parity = 0;
      for (std::size_t p = 0; p < span.pairs.size(); ++p) {
        bool bit = seed.base.get(span.pairs[p].first, span.pairs[p].second);
        for (std::size_t b = 0; b < dim; ++b)
          if ((code >> b) & 1U) bit ^= span.basis.get(b, p);
        parity ^= bit ? 1U : 0U;
      }
      odd += parity;
    }
    const std::uint64_t points = std::uint64_t{1} << dim;
    r.result = {{"graph", "K3,3"},
                {"independent_pairs", span.pairs.size()},
                {"span_dimension", dim},
                {"points", points},
                {"odd_parity_points", odd}};
    r.invariant_ok = odd == points;
    return r;
  }
  K33Labeling l;
  if (!labels.empty()) {
    if (labels.size() != 6) throw InputError("--labeling takes six vertices a,b,c,0,1,2");
    l = {labels[0], labels[1], labels[2], labels[3], labels[4], labels[5]};
  }
  const CrosscapDrawing d =
      parse_file(cfg.inputs[0], [](const std::string& t) { return drawing_from_json(parse_json(t)); });
  bool value = false;
  try {
    value = kleitman_after_normalizing(d, l);
  } catch (const StructuralError& e) {
    throw InputError(cfg.inputs[0] + ": " + e.what());
  }
  r.result = {{"labeling", {l.a, l.b, l.c, l.zero, l.one, l.two}}, {"value", value ? 1 : 0}};
  r.invariant_ok = value;
  return r;
}

Report run_search(const RunConfig& cfg, bool alternate, std::size_t target, std::size_t node_limit) {
  const Graph g = parse_file(cfg.inputs.at(0), [](const std::string& t) { return parse_graph(t); });
  SearchConfig sc;
  sc.alternate = alternate;
  sc.budget = cfg.budget;
  sc.beam = cfg.beam;
  sc.seed = cfg.seed;
  sc.target = target;
  sc.node_limit = node_limit;
  const auto cert = upper_bound_search(g, sc);
  const auto replay = replay_certificate(cert);
  Report r;
  r.result = {{"bound", {{"kind", to_string(cert.bound_kind)}, {"upper", cert.value}}},
              {"certificate", certificate_to_json(cert)},
              {"replay", replay.message},
              {"note", "upper bound only; drawings are those reachable from the convex seed"}};
  r.invariant_ok = replay.ok;
  return r;
}

std::optional<Interval> interval_field(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const json& v = j.at(key);
  if (v.is_number_integer()) return Interval{v.get<long long>(), v.get<long long>()};
  if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer())
    return Interval{v[0].get<long long>(), v[1].get<long long>()};
  throw StructuralError(std::string("field \"") + key + "\" must be an integer or [lo, hi]");
}

Report run_amalgam(const RunConfig& cfg) {
  const json j = load_json(cfg.inputs.at(0));
  AmalgamationInput in;
  Report r;
  try {
    if (j.contains("graph")) {
      const Graph g = graph_from_json(j.at("graph"));
      const std::size_t u = j.at("u").get<std::size_t>(), v = j.at("v").get<std::size_t>();
      in.k = amalgamation_k(g, u, v);
      const auto red = reduce_amalgamation(g, u, v);
      r.result["reduction"] = {{"added_edges", red.added_edges},
                               {"g0_penalty", red.g0_penalty},
                               {"eg0_penalty", red.eg0_penalty},
                               {"graph", graph_to_json(red.graph)}};
    } else {
      in.k = detail::count_field(j, "k");
    }
    in.g1 = interval_field(j, "g1");
    in.g2 = interval_field(j, "g2");
    in.g = interval_field(j, "g");
    in.e1 = interval_field(j, "e1");
    in.e2 = interval_field(j, "e2");
    in.e = interval_field(j, "e");
  } catch (const StructuralError& e) {
    throw InputError(cfg.inputs[0] + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(cfg.inputs[0] + ": " + e.what());
  }
  AmalgamationReport rep;
  try {
    rep = amalgamation_check(in);
  } catch (const StructuralError& e) {
    throw InputError(cfg.inputs[0] + ": " + e.what());
  }
  r.result["k"] = in.k;
  if (rep.implied_g) r.result["implied_g0"] = interval_json(*rep.implied_g);
  if (rep.implied_e) r.result["implied_eg0"] = interval_json(*rep.implied_e);
  json checks = json::array();
  for (const auto& c : rep.inequalities_checked)
    checks.push_back({{"name", c.name}, {"status", to_string(c.status)}});
  r.result["inequalities_checked"] = checks;
  r.invariant_ok = !rep.any_refuted();
  return r;
}

Report run_claim(const RunConfig& cfg, const std::vector<std::size_t>& sizes) {
  if (sizes.size() != 4) throw InputError("--sizes takes four block sizes E1,F1,F2,E2");
  const Gf2Matrix b = load_matrix(cfg.inputs.at(0));
  ClaimRankReport rep;
  try {
    rep = claim_rank_inequality_check(b, {sizes[0], sizes[1], sizes[2], sizes[3]});
  } catch (const StructuralError& e) {
    throw InputError(cfg.inputs[0] + ": " + e.what());
  }
  Report r;
  r.result = {{"lhs", rep.lhs},
              {"rank_b", rep.rank_b},
              {"holds", rep.holds},
              {"rank_e1_row", rep.rank_row1},
              {"rank_e2_row", rep.rank_row4},
              {"rank_e1e1", rep.rank_b11},
              {"rank_e2e2", rep.rank_b44}};
  r.invariant_ok = rep.holds;
  return r;
}

// ---------------------------------------------------------------------------

std::string render(const RunConfig& cfg, const Report& rep) {
  if (cfg.format == "table") {
    std::ostringstream out;
    out << "# z2rank " << Z2RANK_VERSION << " " << cfg.subcommand << " seed=" << cfg.seed << "\n";
    if (!rep.table.empty()) {
      out << rep.table;
    } else {
      for (const auto& [key, value] : rep.result.items())
        out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
    out << "invariant_ok: " << (rep.invariant_ok ? "true" : "false") << "\n";
    return out.str();
  }
  json config = {{"subcommand", cfg.subcommand},
                 {"inputs", cfg.inputs},
                 {"seed", cfg.seed},
                 {"budget", cfg.budget},
                 {"beam", cfg.beam},
                 {"oracle_bits", cfg.oracle_bits},
                 {"format", cfg.format},
                 {"options", cfg.options}};
  json doc = {{"tool", "z2rank"},
              {"version", Z2RANK_VERSION},
              {"config", config},
              {"invariant_ok", rep.invariant_ok},
              {"result", rep.result}};
  return doc.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GF(2) rank tools for Z2-genus bounds"};
  app.set_version_flag("--version", std::string(Z2RANK_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "seed for all randomized behavior");
  app.add_option("--budget", cfg.budget, "search budget in scored drawings");
  app.add_option("--beam", cfg.beam, "search beam width");
  app.add_option("--oracle-bits", cfg.oracle_bits, "free-bit limit of the exhaustive oracle");
  app.add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--output", cfg.output, "write the report here instead of standard output");

  std::string path;
  auto* rank_cmd = app.add_subcommand("rank", "rank of a matrix file");
  rank_cmd->add_option("matrix", path, "matrix file")->required();

  auto* factor_cmd = app.add_subcommand("factor", "Gram factorization B^T B = A");
  factor_cmd->add_option("matrix", path, "symmetric matrix file")->required();

  bool alternate = false;
  auto* minrank_cmd = app.add_subcommand("minrank", "minimum-rank completion of a partial matrix");
  minrank_cmd->add_option("partial", path, "partial matrix file")->required();
  minrank_cmd->add_flag("--alternate", alternate, "only zero-diagonal completions");

  std::optional<std::size_t> blocks;
  std::vector<std::size_t> generate;
  std::size_t count = 100;
  std::string fill = "gram";
  auto* tour_cmd = app.add_subcommand("tournament-verify", "de Caen and block-tournament bounds");
  tour_cmd->add_option("matrix", path, "tournament matrix, or block matrix with --blocks");
  tour_cmd->add_option("--blocks", blocks, "treat the input as an m x m grid of blocks");
  tour_cmd->add_option("--generate", generate, "generate M N block instances")->expected(2);
  tour_cmd->add_option("--count", count, "number of generated instances");
  tour_cmd->add_option("--fill", fill, "diagonal blocks: gram or arbitrary")
      ->check(CLI::IsMember({"gram", "arbitrary"}));

  std::size_t m = 0, n = 0;
  auto* kmn_cmd = app.add_subcommand("kmn-bounds", "lower bounds and Ringel values for K_{m,n}");
  kmn_cmd->add_option("m", m)->required();
  kmn_cmd->add_option("n", n)->required();

  std::size_t sweep_max = 12;
  auto* sweep_cmd = app.add_subcommand("kmn-sweep", "table of bounds for 3 <= m <= n <= max");
  sweep_cmd->add_option("--max", sweep_max, "largest part size");

  std::vector<std::size_t> labels;
  auto* kl_cmd = app.add_subcommand("kleitman", "Kleitman parity invariant");
  kl_cmd->add_option("drawing", path, "drawing JSON; without it the K3,3 move space is exhausted");
  kl_cmd->add_option("--labeling", labels, "vertices a,b,c,0,1,2")->delimiter(',');

  std::size_t target = 0;
  std::size_t node_limit = default_completion_node_limit;
  auto* search_cmd = app.add_subcommand("search-upper", "Z2-genus upper-bound certificate search");
  search_cmd->add_option("graph", path, "graph file")->required();
  search_cmd->add_flag("--alternate", alternate, "bound g0 with alternate witnesses");
  search_cmd->add_option("--target", target, "stop once the bound reaches this value");
  search_cmd->add_option("--node-limit", node_limit, "completion search nodes per drawing");

  auto* amalg_cmd = app.add_subcommand("amalgam-check", "2-amalgamation inequalities");
  amalg_cmd->add_option("input", path, "JSON with k (or graph, u, v) and g0/eg0 intervals")->required();

  std::vector<std::size_t> sizes;
  auto* claim_cmd = app.add_subcommand("claim-check", "rank inequality on a four-class block matrix");
  claim_cmd->add_option("matrix", path, "symmetric matrix file")->required();
  claim_cmd->add_option("--sizes", sizes, "block sizes E1,F1,F2,E2")->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.subcommand = sub->get_name();
  if (!path.empty()) cfg.inputs.push_back(path);

  Report rep;
  try {
    if (sub == rank_cmd) {
      rep = run_rank(cfg);
    } else if (sub == factor_cmd) {
      rep = run_factor(cfg);
    } else if (sub == minrank_cmd) {
      cfg.options = {{"alternate", alternate}};
      rep = run_minrank(cfg, alternate);
    } else if (sub == tour_cmd) {
      cfg.options = {{"fill", fill}, {"count", count}, {"generate", generate}};
      if (blocks) cfg.options["blocks"] = *blocks;
      rep = run_tournament(cfg, blocks, generate, count, fill);
    } else if (sub == kmn_cmd) {
      cfg.options = {{"m", m}, {"n", n}};
      rep = run_kmn_bounds(m, n);
    } else if (sub == sweep_cmd) {
      cfg.options = {{"max", sweep_max}};
      rep = run_kmn_sweep(sweep_max);
    } else if (sub == kl_cmd) {
      cfg.options = {{"labeling", labels}};
      rep = run_kleitman(cfg, labels);
    } else if (sub == search_cmd) {
      cfg.options = {{"alternate", alternate}, {"target", target}, {"node_limit", node_limit}};
      rep = run_search(cfg, alternate, target, node_limit);
    } else if (sub == amalg_cmd) {
      rep = run_amalgam(cfg);
    } else if (sub == claim_cmd) {
      cfg.options = {{"sizes", sizes}};
      rep = run_claim(cfg, sizes);
    }
  } catch (const InputError& e) {
    std::cerr << "z2rank: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "z2rank: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "z2rank: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "z2rank: " << e.what() << "\n";
    return 2;
  }

  const std::string text = render(cfg, rep);
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
      std::cerr << "z2rank: cannot write " << cfg.output << "\n";
      return 2;
    }
    out << text;
  }
  if (!rep.invariant_ok) std::cerr << "z2rank: invariant failed\n";
  return rep.invariant_ok ? 0 : 1;
}
