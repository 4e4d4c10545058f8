// Acceptance run: one PASS/FAIL line per criterion, with timings.
//
// usage: acceptance <z2rank executable> <data dir> <scratch dir>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "z2rank/congruence.hpp"
#include "z2rank/drawing.hpp"
#include "z2rank/genus_bounds.hpp"
#include "z2rank/partial_minrank.hpp"
#include "z2rank/pattern_completion.hpp"
#include "z2rank/tournament.hpp"
#include "z2rank/upper_bound_search.hpp"

using namespace z2rank;
using z2rank::testing::random_matrix;
using z2rank::testing::random_symmetric;
using z2rank::testing::matrix_from_code;
using z2rank::testing::symmetric_from_code;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0 || s < limit_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2fs", s);
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << "  [" << timing;
  if (limit_s > 0) std::cout << " / limit " << limit_s << "s";
  std::cout << "]  " << o.detail << (in_time ? "" : " (over time limit)") << std::endl;
}

PartialSymmetricMatrix corner_instance(const Gf2Matrix& a11, const Gf2Matrix& a12) {
  const std::size_t n1 = a11.rows(), n2 = a12.cols();
  return PartialSymmetricMatrix({n1, n2}, {{a11, a12}, {transpose(a12), std::nullopt}});
}

PartialSymmetricMatrix two_diag_instance(const Gf2Matrix& a12) {
  return PartialSymmetricMatrix({a12.rows(), a12.cols()},
                                {{std::nullopt, a12}, {transpose(a12), std::nullopt}});
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::string data = argc > 2 ? argv[2] : "data";
  const std::string work = argc > 3 ? argv[3] : "acceptance_runs";

  criterion(1, "Gram factorization of 500 random symmetric matrices", 5, [] {
    std::mt19937_64 rng(1);
    std::size_t plus_one = 0, alternate = 0;
    for (int t = 0; t < 500; ++t) {
      const std::size_t n = 1 + rng() % 12;
      const Gf2Matrix a = random_symmetric(rng, n, t % 3 == 0);
      const GramFactor g = gram_factor(a);
      const std::size_t ra = rank(a), rb = rank(g.factor);
      if (!(transpose(g.factor) * g.factor == a)) return Outcome{false, "B^T B != A"};
      if (rb != ra && !(rb == ra + 1 && is_alternate(a)))
        return Outcome{false, "rank(B) = " + std::to_string(rb) + " for rank(A) = " + std::to_string(ra)};
      if (g.factor_rank != rb || g.input_rank != ra) return Outcome{false, "reported ranks wrong"};
      plus_one += rb == ra + 1;
      alternate += is_alternate(a);
    }
    return Outcome{true, std::to_string(alternate) + " alternate inputs, " + std::to_string(plus_one) +
                             " rank+1 factors"};
  });

  criterion(2, "corner completion matches the oracle", 30, [] {
    std::size_t checked = 0;
    for (std::size_t n1 = 1; n1 <= 2; ++n1)
      for (std::size_t n2 = 1; n2 <= 2; ++n2)
        for (std::uint64_t c11 = 0; c11 < (1u << (n1 * (n1 + 1) / 2)); ++c11)
          for (std::uint64_t c12 = 0; c12 < (1u << (n1 * n2)); ++c12) {
            const Gf2Matrix a11 = symmetric_from_code(c11, n1), a12 = matrix_from_code(c12, n1, n2);
            const auto r = minrank_corner(a11, a12);
            const auto o = brute_force_minrank(corner_instance(a11, a12), false);
            if (r.value != o.value || r.achieved_rank != r.value)
              return Outcome{false, "mismatch at n1=" + std::to_string(n1) + " n2=" + std::to_string(n2)};
            ++checked;
          }
    std::mt19937_64 rng(2);
    for (int t = 0; t < 1000; ++t) {
      const std::size_t n1 = 1 + rng() % 3, n2 = 1 + rng() % 3;
      const Gf2Matrix a11 = random_symmetric(rng, n1), a12 = random_matrix(rng, n1, n2);
      const auto r = minrank_corner(a11, a12);
      const auto o = brute_force_minrank(corner_instance(a11, a12), false);
      if (r.value != o.value || r.achieved_rank != r.value) return Outcome{false, "random mismatch"};
      ++checked;
    }
    return Outcome{true, std::to_string(checked) + " instances"};
  });

  criterion(3, "two-diagonal completion equals rank(A12) and the oracle", 30, [] {
    std::size_t checked = 0;
    const auto check = [&](const Gf2Matrix& a12) {
      const auto r = minrank_two_diag(a12);
      const auto o = brute_force_minrank(two_diag_instance(a12), false);
      ++checked;
      return r.value == rank(a12) && r.value == o.value && r.achieved_rank == r.value;
    };
    for (std::size_t n1 = 1; n1 <= 2; ++n1)
      for (std::size_t n2 = 1; n2 <= 2; ++n2)
        for (std::uint64_t c = 0; c < (1u << (n1 * n2)); ++c)
          if (!check(matrix_from_code(c, n1, n2))) return Outcome{false, "exhaustive mismatch"};
    std::mt19937_64 rng(3);
    for (int t = 0; t < 1000; ++t)
      if (!check(random_matrix(rng, 1 + rng() % 3, 1 + rng() % 3))) return Outcome{false, "random mismatch"};
    return Outcome{true, std::to_string(checked) + " instances"};
  });

  criterion(4, "three-block upper bound is sound", 0, [] {
    std::mt19937_64 rng(4);
    std::size_t tight = 0;
    for (int t = 0; t < 1000; ++t) {
      const std::size_t n1 = 1 + rng() % 2, n2 = 1 + rng() % 2, n3 = 1 + rng() % 2;
      const Gf2Matrix a11 = random_symmetric(rng, n1), a12 = random_matrix(rng, n1, n2),
                      a13 = random_matrix(rng, n1, n3), a23 = random_matrix(rng, n2, n3);
      const auto r = minrank_three_upper(a11, a12, a13, a23);
      const PartialSymmetricMatrix p({n1, n2, n3}, {{a11, a12, a13},
                                                    {transpose(a12), std::nullopt, a23},
                                                    {transpose(a13), transpose(a23), std::nullopt}});
      const auto o = brute_force_minrank(p, false);
      if (o.value > r.value || r.achieved_rank > r.value) return Outcome{false, "bound below the oracle"};
      tight += o.value == r.value;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "tight in %zu/1000 (%.1f%%)", tight, tight / 10.0);
    return Outcome{true, buf};
  });

  criterion(5, "de Caen bound on 10^4 random tournaments", 10, [] {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10000; ++t) {
      const std::size_t n = 1 + rng() % 14;
      if (!decaen_check(random_tournament(rng, n)).holds)
        return Outcome{false, "violation at n=" + std::to_string(n)};
    }
    return Outcome{true, "0 violations"};
  });

  criterion(6, "block-tournament rank bound on 10^3 instances", 60, [] {
    std::mt19937_64 rng(6);
    std::size_t tail_violations = 0;
    for (int t = 0; t < 1000; ++t) {
      const std::size_t m = 2 + rng() % 3, n = 1 + rng() % 6;
      const auto inst = generate_instance(m, n, rng(), t % 2 ? DiagonalFill::arbitrary : DiagonalFill::gram);
      const auto r = verify_block_bound(inst);
      if (!r.holds) return Outcome{false, "violation at m=" + std::to_string(m) + " n=" + std::to_string(n)};
      tail_violations += !r.proof_tail_holds;
    }
    return Outcome{true, "0 violations; -(n-2) variant violated " + std::to_string(tail_violations) + " times"};
  });

  criterion(7, "Kleitman invariant on K3,3", 60, [] {
    const Graph g = complete_bipartite(3, 3);
    const MoveSpan span = move_effect_span(g);
    const CrosscapDrawing seed = convex_base_drawing(g);
    const Gf2Matrix mask = independence_mask(g);
    const std::size_t dim = span.basis.rows();
    std::size_t points = 0, synthesized = 0;
    std::mt19937_64 rng(7);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << dim); ++code) {
      CrosscapDrawing d = seed;
      unsigned parity = 0;
      for (std::size_t p = 0; p < span.pairs.size(); ++p) {
        bool bit = seed.base.get(span.pairs[p].first, span.pairs[p].second);
        for (std::size_t b = 0; b < dim; ++b)
          if ((code >> b) & 1U) bit ^= span.basis.get(b, p);
        d.base.set(span.pairs[p].first, span.pairs[p].second, bit);
        d.base.set(span.pairs[p].second, span.pairs[p].first, bit);
        parity ^= bit ? 1U : 0U;
      }
      ++points;
      if (parity != 1) return Outcome{false, "even parity sum at a reachable point"};
      // every point: factor the zero-filled representing matrix; a sample: a minimum-rank factor
      const auto fac = gram_factor(representing_matrix(d)).factor;
      const auto s = synthesize_drawing(d, fac);
      if (!s.independently_even) return Outcome{false, "synthesis not independently even"};
      if (!kleitman_after_normalizing(s.drawing)) return Outcome{false, "Kleitman value 0"};
      ++synthesized;
      if (rng() % 64 == 0) {
        const auto c = min_rank_completion(mask, d.base, false);
        const auto s2 = synthesize_drawing(d, transpose(c.vectors));
        if (!s2.independently_even || !kleitman_after_normalizing(s2.drawing))
          return Outcome{false, "Kleitman failed on a minimum-rank drawing"};
        ++synthesized;
      }
    }
    return Outcome{true, "span dimension " + std::to_string(dim) + ", " + std::to_string(points) +
                             " points odd, " + std::to_string(synthesized) + " drawings give 1"};
  });

  criterion(8, "known small genera as search certificates", 0, [] {
    std::ostringstream log;
    const auto run = [&](const char* name, const Graph& g, bool alt, std::size_t want_value,
                         std::size_t want_rank) {
      SearchConfig cfg;
      cfg.alternate = alt;
      cfg.budget = 100000;
      const auto t0 = std::chrono::steady_clock::now();
      const auto c = upper_bound_search(g, cfg);
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const bool ok = c.value == want_value && c.rank == want_rank && replay_certificate(c).ok &&
                      (!alt || is_alternate(c.witness)) && s < 300;
      if (want_value > 0) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s %s=%zu (%.1fs); ", name, alt ? "g0" : "eg0", c.value, s);
        log << buf;
      }
      return ok;
    };
    bool ok = true;
    std::vector<std::pair<std::string, Graph>> planar = {
        {"K4", complete_graph(4)}, {"P6", path_graph(6)},
        {"star", Graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}})},
        {"tree", Graph(7, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {3, 5}, {0, 6}})}};
    for (std::size_t n = 3; n <= 8; ++n) planar.emplace_back("C" + std::to_string(n), cycle_graph(n));
    for (const auto& [name, g] : planar)
      for (bool alt : {false, true}) ok = run(name.c_str(), g, alt, 0, 0) && ok;
    ok = run("K5", complete_graph(5), false, 1, 1) && ok;
    ok = run("K3,3", complete_bipartite(3, 3), false, 1, 1) && ok;
    ok = run("K5", complete_graph(5), true, 1, 2) && ok;
    ok = run("K3,3", complete_bipartite(3, 3), true, 1, 2) && ok;
    return Outcome{ok, "planar graphs 0; " + log.str()};
  });

  criterion(9, "K_{m,n} lower-bound table against Ringel", 1, [] {
    std::size_t rows = 0;
    for (std::size_t m = 3; m <= 12; ++m)
      for (std::size_t n = m; n <= 12; ++n) {
        const auto r = thm1_lower_bounds(m, n);
        if (r.g0_lower > r.g_ringel || r.eg0_lower > r.eg_ringel)
          return Outcome{false, "bound above Ringel at " + std::to_string(m) + "," + std::to_string(n)};
        if (m == n) {
          const long long nn = static_cast<long long>(n);
          if (!(Rational::make(nn - 6, nn) <= r.ratio)) return Outcome{false, "ratio below 1 - 6/n"};
        }
        ++rows;
      }
    return Outcome{true, std::to_string(rows) + " rows"};
  });

  criterion(10, "amalgamation arithmetic and the rank claim", 60, [] {
    struct Fixture {
      std::size_t k;
      Interval g1, g2, g, e1, e2, e;
    };
    // K5 and K3,3 as 2-amalgamations of planar pieces; K5 blocks glued along two vertices.
    const std::vector<Fixture> fixtures = {
        {1, {0, 0}, {0, 0}, {1, 1}, {0, 0}, {0, 0}, {1, 1}},
        {2, {0, 0}, {0, 0}, {1, 1}, {0, 0}, {0, 0}, {1, 1}},
        {3, {0, 0}, {0, 0}, {1, 1}, {0, 0}, {0, 0}, {1, 1}},
        {1, {1, 1}, {1, 1}, {1, 2}, {1, 1}, {1, 1}, {1, 2}},
        {1, {1, 1}, {1, 1}, {2, 2}, {1, 1}, {1, 1}, {2, 2}},
        {2, {1, 1}, {0, 0}, {1, 1}, {1, 1}, {0, 0}, {1, 1}},
    };
    std::size_t checks = 0;
    for (const auto& f : fixtures) {
      const auto r = amalgamation_check({f.k, f.g1, f.g2, f.g, f.e1, f.e2, f.e});
      for (const auto& c : r.inequalities_checked) {
        if (!c.holds()) return Outcome{false, "fixture inequality " + c.name + " not holding"};
        ++checks;
      }
    }
    AmalgamationInput planar;
    planar.k = 4;
    planar.g1 = Interval{0, 0};
    planar.g2 = Interval{0, 0};
    const auto p = amalgamation_check(planar);
    if (!p.implied_g || p.implied_g->hi != 1) return Outcome{false, "planar pieces do not give g0 <= 1"};

    std::mt19937_64 rng(10);
    for (int t = 0; t < 1000; ++t) {
      std::array<std::size_t, 4> s{};
      for (auto& x : s) x = rng() % 5;
      const std::size_t n = s[0] + s[1] + s[2] + s[3];
      Gf2Matrix b = random_symmetric(rng, n);
      std::array<std::size_t, 5> off{};
      for (int i = 0; i < 4; ++i) off[i + 1] = off[i] + s[i];
      for (auto [i, j] : {std::pair<int, int>{0, 2}, {0, 3}, {1, 3}})
        for (std::size_t r = off[i]; r < off[i + 1]; ++r)
          for (std::size_t c = off[j]; c < off[j + 1]; ++c) {
            b.set(r, c, false);
            b.set(c, r, false);
          }
      if (!claim_rank_inequality_check(b, s).holds) return Outcome{false, "claim inequality fails"};
    }
    return Outcome{true, std::to_string(checks) + " fixture inequalities hold; 1000 claim instances hold"};
  });

  criterion(11, "CLI reruns are byte-identical", 0, [&] {
    if (cli.empty()) return Outcome{false, "no CLI path given"};
    std::filesystem::create_directories(work);
    const std::vector<std::string> runs = {
        "rank " + data + "/i3_plus_j3.txt",
        "factor " + data + "/i3_plus_j3.txt",
        "minrank " + data + "/corner.partial",
        "minrank " + data + "/three_block.partial",
        "tournament-verify " + data + "/tournament5.txt",
        "tournament-verify --generate 4 6 --count 20 --seed 11",
        "kmn-bounds 3 3",
        "kmn-sweep --format table",
        "kleitman " + data + "/k33_drawing.json",
        "kleitman",
        "search-upper " + data + "/c4.graph",
        "search-upper " + data + "/k5.graph --alternate --seed 5 --budget 3000",
        "search-upper " + data + "/k33.graph --seed 3 --budget 3000",
        "amalgam-check " + data + "/amalgam_graph.json",
        "claim-check " + data + "/claim.txt --sizes 1,2,2,1",
    };
    std::size_t i = 0;
    for (const auto& args : runs) {
      std::string out[2];
      for (int rep = 0; rep < 2; ++rep) {
        const std::string file = work + "/run" + std::to_string(i) + "_" + std::to_string(rep) + ".out";
        const std::string cmd = "\"" + cli + "\" " + args + " --output \"" + file + "\"";
        const int status = std::system(cmd.c_str());
        if (status != 0) return Outcome{false, "nonzero exit for: " + args};
        out[rep] = slurp(file);
      }
      if (out[0].empty() || out[0] != out[1]) return Outcome{false, "outputs differ for: " + args};
      ++i;
    }
    return Outcome{true, std::to_string(i) + " subcommand runs repeated"};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
