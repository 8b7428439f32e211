#include "streq/border.hpp"

#include <algorithm>
#include <map>

#include "streq/core.hpp"

namespace streq {

ValidLengthTable compute_valid_lengths(const System& sys) {
  ValidLengthTable table;
  for (const auto& eq : sys.equations())
    table.t = std::max(table.t, static_cast<int>(eq.target.size()));

  std::map<BlockId, std::pair<std::vector<const SymbolString*>,
                              std::vector<const SymbolString*>>>
      constraints;  // block -> (targets started, targets ended)
  for (const auto& eq : sys.equations()) {
    constraints[eq.pattern.front()].first.push_back(&eq.target);
    constraints[eq.pattern.back()].second.push_back(&eq.target);
  }

  for (const auto& [block, cons] : constraints) {
    BorderBlockLengths entry;
    entry.block = block;
    entry.valid.assign(table.t + 1, 0);
    entry.word.assign(table.t + 1, {});
    entry.valid[0] = 1;
    for (int l = 1; l <= table.t; ++l) {
      std::optional<SymbolString> common;
      bool ok = true;
      for (const SymbolString* tgt : cons.first) {
        if (static_cast<int>(tgt->size()) < l) { ok = false; break; }
        SymbolString prefix(tgt->begin(), tgt->begin() + l);
        if (!common) common = std::move(prefix);
        else if (*common != prefix) { ok = false; break; }
      }
      for (const SymbolString* tgt : cons.second) {
        if (!ok) break;
        if (static_cast<int>(tgt->size()) < l) { ok = false; break; }
        SymbolString suffix(tgt->end() - l, tgt->end());
        if (!common) common = std::move(suffix);
        else if (*common != suffix) { ok = false; break; }
      }
      if (ok && common) {
        entry.valid[l] = 1;
        entry.word[l] = std::move(*common);
      }
    }
    table.blocks.push_back(std::move(entry));
  }
  return table;
}

namespace {

enum class LK { False, True, Var };

struct LitC {
  LK kind;
  Lit lit{};
};

LitC negate(LitC a) {
  if (a.kind == LK::False) return {LK::True};
  if (a.kind == LK::True) return {LK::False};
  return {LK::Var, {a.lit.var, !a.lit.positive}};
}

struct Builder {
  Formula2SAT f;
  int t = 0;
  std::map<std::pair<BlockId, int>, int> index;

  // the proposition "len(block) <= bound", clamped at the [0, t] boundary
  LitC leq(BlockId block, int bound) {
    if (bound < 0) return {LK::False};
    if (bound >= t) return {LK::True};
    auto key = std::make_pair(block, bound);
    auto it = index.find(key);
    if (it == index.end()) throw InternalInconsistency("length variable not materialized");
    return {LK::Var, {it->second, true}};
  }
  LitC gt(BlockId block, int bound) { return negate(leq(block, bound)); }

  void unit(LitC a, int family, int equation) {
    if (a.kind == LK::True) return;
    if (a.kind == LK::False) {
      f.contradiction = true;
      return;
    }
    f.clauses.push_back({{a.lit}, family, equation});
  }

  // clause (a -> b), i.e. (~a | b)
  void imply(LitC a, LitC b, int family, int equation) {
    if (a.kind == LK::False || b.kind == LK::True) return;
    if (a.kind == LK::True) { unit(b, family, equation); return; }
    if (b.kind == LK::False) { unit(negate(a), family, equation); return; }
    f.clauses.push_back({{negate(a).lit, b.lit}, family, equation});
  }
};

}  // namespace

Formula2SAT build_formula(const System& sys, const ValidLengthTable& table) {
  Builder bld;
  bld.t = table.t;
  for (const auto& entry : table.blocks)
    for (int l = 0; l < table.t; ++l) {
      bld.index[{entry.block, l}] = static_cast<int>(bld.f.vars.size());
      bld.f.vars.push_back({entry.block, l});
    }

  // (1) non-emptiness, (2) monotone bounds, (3) invalid lengths push down
  for (const auto& entry : table.blocks) {
    bld.unit(bld.gt(entry.block, 0), 1, -1);
    for (int l = 0; l <= table.t; ++l)
      for (int l2 = l + 1; l2 <= table.t; ++l2)
        bld.imply(bld.leq(entry.block, l), bld.leq(entry.block, l2), 2, -1);
    for (int l = 1; l <= table.t; ++l)
      if (!entry.valid[l])
        bld.imply(bld.leq(entry.block, l), bld.leq(entry.block, l - 1), 3, -1);
  }

  for (std::size_t ei = 0; ei < sys.equations().size(); ++ei) {
    const auto& eq = sys.equations()[ei];
    const int len = static_cast<int>(eq.target.size());
    const int size = static_cast<int>(eq.pattern.size());
    const BlockId p = eq.pattern.front();
    const BlockId q = eq.pattern.back();
    if (size == 1) {
      bld.unit(bld.gt(p, len - 1), 4, static_cast<int>(ei));
      continue;
    }
    if (size == 2)
      for (int l = 0; l <= len; ++l)
        bld.imply(bld.leq(p, l), bld.gt(q, len - 1 - l), 5, static_cast<int>(ei));
    for (int l = 0; l <= len; ++l)
      bld.imply(bld.gt(p, l), bld.leq(q, len - size - l + 1), 6, static_cast<int>(ei));
  }
  return bld.f;
}

namespace {

// iterative Tarjan SCC over the implication graph; components are numbered
// in completion order (sinks first)
struct Tarjan {
  const std::vector<std::vector<int>>& adj;
  std::vector<int> idx, low, comp;
  std::vector<char> on_stack;
  std::vector<int> stack;
  int counter = 0, comps = 0;

  explicit Tarjan(const std::vector<std::vector<int>>& a)
      : adj(a), idx(a.size(), -1), low(a.size(), 0), comp(a.size(), -1),
        on_stack(a.size(), 0) {}

  void run(int root) {
    std::vector<std::pair<int, std::size_t>> work;  // (node, next child index)
    work.emplace_back(root, 0);
    while (!work.empty()) {
      auto& [v, child] = work.back();
      if (child == 0) {
        idx[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      bool descended = false;
      while (child < adj[v].size()) {
        int w = adj[v][child++];
        if (idx[w] == -1) {
          work.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], idx[w]);
      }
      if (descended) continue;
      if (low[v] == idx[v]) {
        while (true) {
          int w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = comps;
          if (w == v) break;
        }
        ++comps;
      }
      int finished = v;
      work.pop_back();
      if (!work.empty())
        low[work.back().first] = std::min(low[work.back().first], low[finished]);
    }
  }
};

int node_of(Lit l) { return 2 * l.var + (l.positive ? 0 : 1); }
int negation_of(int node) { return node ^ 1; }

}  // namespace

std::optional<std::vector<bool>> two_sat(const Formula2SAT& formula) {
  if (formula.contradiction) return std::nullopt;
  const int n = static_cast<int>(formula.vars.size());
  std::vector<std::vector<int>> adj(2 * n);
  for (const auto& cl : formula.clauses) {
    if (cl.lits.size() == 1) {
      int a = node_of(cl.lits[0]);
      adj[negation_of(a)].push_back(a);
    } else if (cl.lits.size() == 2) {
      int a = node_of(cl.lits[0]);
      int b = node_of(cl.lits[1]);
      adj[negation_of(a)].push_back(b);
      adj[negation_of(b)].push_back(a);
    } else {
      throw InternalInconsistency("2SAT clause must have one or two literals");
    }
  }
  Tarjan tarjan(adj);
  for (int v = 0; v < 2 * n; ++v)
    if (tarjan.idx[v] == -1) tarjan.run(v);
  std::vector<bool> val(n);
  for (int v = 0; v < n; ++v) {
    if (tarjan.comp[2 * v] == tarjan.comp[2 * v + 1]) return std::nullopt;
    val[v] = tarjan.comp[2 * v] < tarjan.comp[2 * v + 1];
  }
  return val;
}

std::string dump_formula(const System& sys, const Formula2SAT& formula) {
  std::string out;
  for (const auto& cl : formula.clauses) {
    for (std::size_t i = 0; i < cl.lits.size(); ++i) {
      if (i) out += " | ";
      const LengthVar& v = formula.vars[cl.lits[i].var];
      if (!cl.lits[i].positive) out += '~';
      out += sys.block_name(v.block) + "<=" + std::to_string(v.bound);
    }
    out += "  # family=" + std::to_string(cl.family);
    if (cl.equation >= 0) out += " eq=" + std::to_string(cl.equation);
    out += '\n';
  }
  if (formula.contradiction) out += "# contradiction during construction\n";
  return out;
}

SolveOutcome solve_border(const System& sys) {
  if (sys.semantics != Semantics::NonErasing)
    throw Error("solve_border requires non-erasing semantics");
  if (sys.deletion_budget.value_or(0) != 0)
    throw Error("solve_border requires a zero deletion budget");
  if (!classify(sys).only_border_blocks)
    throw NotBorderOnly("system has a named block at an interior pattern position");

  ValidLengthTable table = compute_valid_lengths(sys);
  Formula2SAT formula = build_formula(sys, table);
  auto valuation = two_sat(formula);
  SolveOutcome out;
  if (!valuation) return out;

  Assignment sigma;
  std::vector<int> shortest(sys.block_count(), -1);
  for (const auto& entry : table.blocks) {
    int lp = table.t;  // "len <= t" is constant-true
    for (int l = 0; l < table.t; ++l) {
      auto vi = formula.find_var(entry.block, l);
      if (vi && (*valuation)[*vi]) { lp = l; break; }
    }
    if (!entry.valid[lp])
      throw InternalInconsistency("2SAT admitted an invalid length");
    shortest[entry.block] = lp;
    sigma.set(entry.block, entry.word[lp]);
  }

  for (const auto& eq : sys.equations()) {
    const int size = static_cast<int>(eq.pattern.size());
    if (size < 2) continue;
    const int len = static_cast<int>(eq.target.size());
    const int lp = shortest[eq.pattern.front()];
    const int lq = shortest[eq.pattern.back()];
    const int gap = len - lp - lq;
    const int middle = size - 2;
    if (middle == 0) {
      if (gap != 0) throw InternalInconsistency("border lengths do not cover the target");
      continue;
    }
    if (gap < middle) throw InternalInconsistency("middle jokers do not fit the target");
    int at = lp;
    for (int j = 0; j < middle; ++j) {
      int take = (j + 1 < middle) ? 1 : gap - (middle - 1);
      sigma.set(eq.pattern[j + 1],
                SymbolString(eq.target.begin() + at, eq.target.begin() + at + take));
      at += take;
    }
  }

  VerifyResult chk = verify(sys, sigma);
  if (!chk.ok) throw InternalInconsistency("solve_border produced a bad witness: " + chk.reason);
  out.witness = std::move(sigma);
  return out;
}

}  // namespace streq
