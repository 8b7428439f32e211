// Acceptance gate: eight end-to-end checks over the solvers, the generators
// and the command line. Each check prints exactly one PASS/FAIL line with its
// wall time; the process exit code is the number of failed checks. Run from
// the repository root (the first check loads files from fixtures/).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "streq/border.hpp"
#include "streq/cli.hpp"
#include "streq/core.hpp"
#include "streq/exact.hpp"
#include "streq/lcs.hpp"
#include "streq/reductions.hpp"
#include "streq/system.hpp"
#include "test_support.hpp"

namespace {

using namespace streq;
using namespace testsup;

struct CheckResult {
  bool ok = true;
  std::string note;  // failure reason, or a short summary of what was covered

  void fail(std::string why) {
    if (ok) {
      ok = false;
      note = std::move(why);
    }
  }
};

// --------------------------------------------------------------------------
// 1. The bundled worked example solves and its published witness verifies,
//    both through the command line front end.
// --------------------------------------------------------------------------
CheckResult check_fixture() {
  CheckResult res;
  if (!std::filesystem::exists("fixtures/fig1.eq")) {
    res.fail("fixtures/fig1.eq not found; run from the repository root");
    return res;
  }
  std::ostringstream out, err;
  int rc = cli::run({"solve", "fixtures/fig1.eq"}, out, err);
  if (rc != 0)
    res.fail("solve exited with " + std::to_string(rc) + ": " + err.str());
  else if (out.str().find("# status: SAT") == std::string::npos)
    res.fail("solve did not report SAT");
  std::ostringstream vout, verr;
  rc = cli::run({"verify", "fixtures/fig1.eq", "--assignment", "fixtures/fig1_witness.txt"},
                vout, verr);
  if (rc != 0)
    res.fail("verify exited with " + std::to_string(rc) + ": " + verr.str());
  else if (vout.str().find("ACCEPTED") == std::string::npos)
    res.fail("verify did not accept the bundled witness");
  if (res.ok) res.note = "cli solve reports SAT and cli verify accepts";
  return res;
}

// --------------------------------------------------------------------------
// 2. The border 2-SAT solver and the exhaustive solver decide every
//    only-border system identically: all systems with targets over {a,b} of
//    length <= 5, r <= 2 and c <= 3 (up to block renaming), plus 1000 seeded
//    random ones with targets up to length 7. Every witness must verify.
// --------------------------------------------------------------------------
CheckResult check_border_equivalence() {
  CheckResult res;
  long long total = 0, satisfiable = 0;
  auto probe = [&](const System& sys) {
    if (!res.ok) return;
    ++total;
    SolveOutcome fast = solve_border(sys);
    SolveOutcome slow = solve_xp(sys);
    if (fast.sat() != slow.sat()) {
      res.fail("solvers disagree on system #" + std::to_string(total));
      return;
    }
    if (!fast.sat()) return;
    ++satisfiable;
    if (!verify(sys, *fast.witness).ok)
      res.fail("border witness fails on system #" + std::to_string(total));
    if (!verify(sys, *slow.witness).ok)
      res.fail("exhaustive witness fails on system #" + std::to_string(total));
  };
  for_each_border_system(5, 2, probe);
  Rng rng(20260301);
  for (int i = 0; i < 1000 && res.ok; ++i) probe(random_border_system(rng, 7));
  if (res.ok)
    res.note = std::to_string(total) + " systems, " + std::to_string(satisfiable) +
               " satisfiable, zero disagreements";
  return res;
}

// --------------------------------------------------------------------------
// 3. The factor-LCS deletion solver and the deletion-set solver agree on 500
//    seeded random systems (t <= 5, r <= 2, c <= 2, d <= 2), and all their
//    witnesses pass the budget-aware verifier.
// --------------------------------------------------------------------------
CheckResult check_deletion_equivalence() {
  CheckResult res;
  Rng rng(20260302);
  int satisfiable = 0;
  for (int i = 0; i < 500 && res.ok; ++i) {
    auto [sys, d] = random_deletion_system(rng);
    SolveOutcome sets = solve_deletions_xp(sys, d);
    SolveOutcome lcs = solve_deletions_lcs(sys, d);
    if (sets.sat() != lcs.sat()) {
      res.fail("solvers disagree on random system #" + std::to_string(i));
      break;
    }
    if (!sets.sat()) continue;
    ++satisfiable;
    if (!verify_deletions(sys, *sets.witness, d).ok)
      res.fail("deletion-set witness fails on random system #" + std::to_string(i));
    if (!verify_deletions(sys, *lcs.witness, d).ok)
      res.fail("factor-LCS witness fails on random system #" + std::to_string(i));
  }
  if (res.ok)
    res.note = "500 systems, " + std::to_string(satisfiable) +
               " satisfiable, zero disagreements";
  return res;
}

// --------------------------------------------------------------------------
// 4. Every clique generator round-trips against the graph oracles: the
//    single-equation and mixed-size constructions over all 1024 five-vertex
//    graphs, and all five constructions (the multicolored one over every
//    proper 3-coloring) over the curated n <= 6 collection.
// --------------------------------------------------------------------------
CheckResult check_reduction_roundtrips() {
  CheckResult res;
  SolveOptions caps;
  caps.branch_cap = 400'000'000;

  auto roundtrip = [&](const ReductionOutput& out, bool expected, const std::string& ctx) {
    if (!res.ok) return;
    SolveOutcome got = solve_xp(out.system, caps);
    if (got.sat() != expected) {
      res.fail(ctx + ": solver says " + (got.sat() ? "SAT" : "UNSAT") +
               ", oracle says " + (expected ? "SAT" : "UNSAT"));
      return;
    }
    if (!got.sat()) return;
    if (!verify(out.system, *got.witness).ok) {
      res.fail(ctx + ": witness does not verify");
      return;
    }
    std::set<int> picked = decode(out, *got.witness);
    if (static_cast<int>(picked.size()) != out.kappa ||
        !pairwise_adjacent(out.graph, picked)) {
      res.fail(ctx + ": decoded vertices are not a clique of size " +
               std::to_string(out.kappa));
      return;
    }
    if (out.kind == ReductionKind::MccSize3) {
      std::set<int> used;
      for (int v : picked) used.insert(out.graph.colors[v - 1]);
      if (static_cast<int>(used.size()) != out.kappa)
        res.fail(ctx + ": decoded clique repeats a color");
    }
  };

  for (unsigned mask = 0; mask < 1024 && res.ok; ++mask) {
    Graph g = graph_from_mask(5, mask);
    bool expected = clique_oracle(g, 3);
    std::string ctx = "five-vertex graph mask " + std::to_string(mask);
    roundtrip(gen_clique_single_eq(g, 3), expected, ctx + ", single-eq");
    roundtrip(gen_clique_mixed(g, 3), expected, ctx + ", mixed");
  }

  long long colorings = 0;
  const std::vector<Graph> curated = curated_graphs();
  for (std::size_t gi = 0; gi < curated.size() && res.ok; ++gi) {
    const Graph& g = curated[gi];
    bool expected = clique_oracle(g, 3);
    std::string ctx = "curated graph #" + std::to_string(gi);
    roundtrip(gen_clique_single_eq(g, 3), expected, ctx + ", single-eq");
    roundtrip(gen_clique_mixed(g, 3), expected, ctx + ", mixed");
    roundtrip(gen_clique_two_eq(g, 3), expected, ctx + ", two-eq");
    roundtrip(gen_clique_two_eq_empty(g, 3), expected, ctx + ", two-eq-empty");
    for (const auto& colors : proper_colorings(g, 3)) {
      if (!res.ok) break;
      Graph colored = g;
      colored.colors = colors;
      ++colorings;
      roundtrip(gen_mcc_size3(colored, 3), mcc_oracle(colored, 3),
                ctx + ", mcc coloring #" + std::to_string(colorings));
    }
  }
  if (res.ok)
    res.note = "1024 five-vertex graphs x 2 generators, " +
               std::to_string(curated.size()) + " curated graphs x 4 generators, " +
               std::to_string(colorings) + " colored instances, zero disagreements";
  return res;
}

// --------------------------------------------------------------------------
// 5. The LCS embeddings are satisfiable exactly up to the true LCS length:
//    for 200 seeded word tuples (2-3 words, total length <= 15), the
//    one-block system at budget d(lambda) and the padded single-equation
//    system at the same budget are SAT iff lambda <= LCS, where the LCS
//    length comes from independent subsequence enumeration.
// --------------------------------------------------------------------------
CheckResult check_lcs_embeddings() {
  CheckResult res;
  Rng rng(20260305);
  int multi_probes = 0, single_probes = 0;
  for (int it = 0; it < 200 && res.ok; ++it) {
    // Words are a shared base plus a few random insertions, so the boundary
    // budget d(LCS) stays small and the lambda = LCS + 1 probe is usually
    // well defined.
    const int r = 2 + rng.below(2);
    const int base_len = 1 + rng.below(4);
    std::string base;
    for (int i = 0; i < base_len; ++i) base += rng.below(2) ? 'b' : 'a';
    const bool fat = rng.chance(1, 2);
    std::vector<std::string> words;
    int total = 0;
    for (int k = 0; k < r; ++k) {
      std::string w = base;
      const int inserts = r == 2 ? (fat ? 1 + rng.below(2) : rng.below(3))
                                 : (fat ? 1 : rng.below(2));
      for (int j = 0; j < inserts; ++j)
        w.insert(static_cast<std::size_t>(rng.below(static_cast<int>(w.size()) + 1)), 1,
                 rng.below(2) ? 'b' : 'a');
      total += static_cast<int>(w.size());
      words.push_back(std::move(w));
    }

    const int lcs = lcs_len_enum(words);
    LcsEmbedding emb = gen_from_lcs_multi(words);
    if (emb.total_length != total || emb.copies != r) {
      res.fail("embedding stats are wrong on tuple #" + std::to_string(it));
      break;
    }
    std::set<int> lambdas = {1, lcs - 1, lcs, lcs + 1};
    for (int lambda : lambdas) {
      if (!res.ok || lambda < 1) continue;
      const int d = emb.budget(lambda);
      if (d < 0) continue;
      const bool expected = lambda <= lcs;
      std::string ctx = "tuple #" + std::to_string(it) + " at lambda " +
                        std::to_string(lambda);
      SolveOutcome multi = solve_deletions_xp(emb.system, d);
      ++multi_probes;
      if (multi.sat() != expected) {
        res.fail(ctx + ": one-block system is " + (multi.sat() ? "SAT" : "UNSAT"));
        break;
      }
      if (multi.sat() && !verify_deletions(emb.system, *multi.witness, d).ok) {
        res.fail(ctx + ": one-block witness fails");
        break;
      }
      // The padded form needs at least one padding symbol: with a zero
      // budget the words are concatenated bare and a copy of X may split
      // across a word boundary (abab = ab.ab although lcs(aba, b) = 1). Its
      // target also grows with the budget, so probe small positive budgets.
      if (d < 1 || d > 4) continue;
      System padded = gen_from_lcs_single(words, d);
      SolveOutcome single = solve_deletions_xp(padded, d);
      ++single_probes;
      if (single.sat() != expected) {
        res.fail(ctx + ": padded system is " + (single.sat() ? "SAT" : "UNSAT"));
        break;
      }
      if (single.sat() && !verify_deletions(padded, *single.witness, d).ok)
        res.fail(ctx + ": padded witness fails");
    }
  }
  if (res.ok)
    res.note = "200 word tuples, " + std::to_string(multi_probes) + " one-block and " +
               std::to_string(single_probes) + " padded probes, boundary exact";
  return res;
}

// --------------------------------------------------------------------------
// 6. The prefix/suffix gadget strings of the mixed-size construction
//    identify vertex pairs uniquely for every vertex count up to 8: the
//    segments of the generated edge target are pairwise distinct and equal
//    pre(u) + suf(v), while pre(v) + suf(v) always spells the vertex target.
// --------------------------------------------------------------------------
CheckResult check_pre_suf_uniqueness() {
  CheckResult res;
  for (int n = 1; n <= 8 && res.ok; ++n) {
    ReductionOutput out = gen_clique_mixed(complete_graph(n), 2);
    const System& sys = out.system;
    auto pre = [&](int v) {
      std::string w = "x";
      for (int u = 1; u < v; ++u) w += out.graph.label(u);
      return w;
    };
    auto suf = [&](int v) {
      std::string w;
      for (int u = v; u <= n; ++u) w += out.graph.label(u);
      return w;
    };
    const std::string tv = flat(sys, sys.equations()[0].target);
    for (int v = 1; v <= n; ++v)
      if (pre(v) + suf(v) != tv)
        res.fail("pre+suf of vertex " + std::to_string(v) + " is not the vertex target at n " +
                 std::to_string(n));

    const Equation* te = nullptr;
    for (const auto& eq : sys.equations())
      if (eq.pattern.size() > 2) te = &eq;
    if (!te) {
      res.fail("no edge equation at n " + std::to_string(n));
      break;
    }
    const SymbolId ysep = te->target.front();
    std::vector<std::string> segments;
    std::string cur;
    for (std::size_t i = 1; i < te->target.size(); ++i) {
      if (te->target[i] == ysep) {
        segments.push_back(cur);
        cur.clear();
      } else {
        cur += sys.symbol_name(te->target[i]);
      }
    }
    if (static_cast<int>(segments.size()) != n * (n - 1) / 2) {
      res.fail("expected " + std::to_string(n * (n - 1) / 2) + " edge segments at n " +
               std::to_string(n) + ", got " + std::to_string(segments.size()));
      break;
    }
    std::map<std::string, std::pair<int, int>> seen;
    std::size_t at = 0;
    for (int u = 1; u <= n && res.ok; ++u)
      for (int v = u + 1; v <= n && res.ok; ++v, ++at) {
        if (segments[at] != pre(u) + suf(v))
          res.fail("segment for (" + std::to_string(u) + "," + std::to_string(v) +
                   ") is misassembled at n " + std::to_string(n));
        else if (!seen.emplace(segments[at], std::make_pair(u, v)).second)
          res.fail("segments collide for two pairs at n " + std::to_string(n));
      }
  }
  if (res.ok) res.note = "all vertex pairs distinct for n = 1..8";
  return res;
}

// --------------------------------------------------------------------------
// 7. The multi-string LCS equals the enumeration maximum, and is itself a
//    common subsequence, for every tuple of at most three {a,b} words of
//    length at most 6 (the empty word included).
// --------------------------------------------------------------------------
CheckResult check_multi_lcs_exhaustive() {
  CheckResult res;
  std::vector<std::string> words = ab_words(6);
  words.insert(words.begin(), "");

  System dict;
  std::vector<SymbolString> interned;
  interned.reserve(words.size());
  for (const auto& w : words) interned.push_back(word(dict, w));

  // Distinct subsequences of every word, longest first, for an early-exit
  // enumeration maximum that never consults the solver's table.
  std::vector<std::vector<std::string>> subs(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (const auto& s : all_subsequences(words[i])) subs[i].push_back(s);
    std::sort(subs[i].begin(), subs[i].end(), [](const auto& a, const auto& b) {
      return a.size() > b.size();
    });
  }
  auto enum_max = [&](const std::vector<int>& ids) {
    int shortest = ids[0];
    for (int id : ids)
      if (words[id].size() < words[shortest].size()) shortest = id;
    for (const auto& s : subs[shortest]) {
      bool common = true;
      for (int id : ids)
        if (!is_subseq_str(s, words[id])) {
          common = false;
          break;
        }
      if (common) return static_cast<int>(s.size());
    }
    return 0;
  };

  long long tuples = 0;
  auto probe = [&](const std::vector<int>& ids) {
    if (!res.ok) return;
    ++tuples;
    std::vector<SymbolString> in;
    for (int id : ids) in.push_back(interned[id]);
    SymbolString got = multi_lcs(in);
    for (int id : ids)
      if (!is_subsequence(got, interned[id])) {
        res.fail("result is not a common subsequence on tuple #" + std::to_string(tuples));
        return;
      }
    if (static_cast<int>(got.size()) != enum_max(ids))
      res.fail("length differs from the enumeration maximum on tuple #" +
               std::to_string(tuples));
  };

  const int m = static_cast<int>(words.size());
  for (int i = 0; i < m && res.ok; ++i) probe({i});
  for (int i = 0; i < m && res.ok; ++i)
    for (int j = 0; j < m && res.ok; ++j) probe({i, j});
  for (int i = 0; i < m && res.ok; ++i)
    for (int j = 0; j < m && res.ok; ++j)
      for (int k = 0; k < m && res.ok; ++k) probe({i, j, k});
  if (res.ok) res.note = std::to_string(tuples) + " tuples, all exact";
  return res;
}

// --------------------------------------------------------------------------
// 8. Budget monotonicity (SAT at d stays SAT at d + 1, for both deletion
//    solvers) and erasing dominance (a satisfiable non-erasing system stays
//    satisfiable when blocks may be empty) hold on the same seeded pools the
//    equivalence checks use.
// --------------------------------------------------------------------------
CheckResult check_monotonicity() {
  CheckResult res;
  Rng border_rng(20260301);
  for (int i = 0; i < 1000 && res.ok; ++i) {
    System sys = random_border_system(border_rng, 7);
    if (!solve_xp(sys).sat()) continue;
    System loose = sys;
    loose.semantics = Semantics::AllowEmpty;
    if (!solve_xp(loose).sat())
      res.fail("erasing dominance fails on border system #" + std::to_string(i));
  }
  Rng del_rng(20260302);
  for (int i = 0; i < 500 && res.ok; ++i) {
    auto [sys, d] = random_deletion_system(del_rng);
    if (solve_deletions_xp(sys, d).sat() && !solve_deletions_xp(sys, d + 1).sat())
      res.fail("deletion-set monotonicity fails on system #" + std::to_string(i));
    if (solve_deletions_lcs(sys, d).sat() && !solve_deletions_lcs(sys, d + 1).sat())
      res.fail("factor-LCS monotonicity fails on system #" + std::to_string(i));
    if (sys.semantics == Semantics::NonErasing && solve_deletions_xp(sys, d).sat()) {
      System loose = sys;
      loose.semantics = Semantics::AllowEmpty;
      if (!solve_deletions_xp(loose, d).sat())
        res.fail("erasing dominance fails on deletion system #" + std::to_string(i));
    }
  }
  if (res.ok) res.note = "1000 border systems and 500 deletion systems, all monotone";
  return res;
}

struct Criterion {
  int id;
  const char* label;
  double limit_seconds;  // 0 = no pinned bound
  CheckResult (*run)();
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "bundled example solves and its witness verifies", 1.0, check_fixture},
      {2, "border solver matches the exhaustive solver", 120.0, check_border_equivalence},
      {3, "deletion solvers agree on random systems", 300.0, check_deletion_equivalence},
      {4, "clique generators round-trip against graph oracles", 1800.0,
       check_reduction_roundtrips},
      {5, "LCS embeddings flip exactly at the LCS length", 0.0, check_lcs_embeddings},
      {6, "prefix/suffix splits identify vertex pairs uniquely", 0.0,
       check_pre_suf_uniqueness},
      {7, "multi-string LCS matches the enumeration maximum", 0.0,
       check_multi_lcs_exhaustive},
      {8, "budget monotonicity and erasing dominance", 0.0, check_monotonicity},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res.fail(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res.ok && c.limit_seconds > 0 && seconds > c.limit_seconds)
      res.fail("exceeded the " + std::to_string(static_cast<int>(c.limit_seconds)) +
               "s budget");
    if (!res.ok) ++failures;
    std::printf("criterion %d (%s): %s (%.2fs; %s)\n", c.id, c.label,
                res.ok ? "PASS" : "FAIL", seconds, res.note.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%d criteria passed\n",
              static_cast<int>(criteria.size()) - failures,
              static_cast<int>(criteria.size()));
  return failures;
}
