#include "streq/exact.hpp"

#include <algorithm>
#include <vector>

#include "streq/core.hpp"

namespace streq {

namespace {

constexpr std::size_t kNoPos = static_cast<std::size_t>(-1);

// One equation folded into alternating known runs and unknown stretches under
// a partial assignment. gap_min/gap_unknown have size lits.size()+1: entry i
// describes the stretch before lits[i], the last entry the stretch after the
// final run. A gap with gap_unknown=false contains no unassigned block at
// all, so the neighbouring run is anchored hard against it.
struct Shape {
  std::vector<SymbolString> lits;
  std::vector<long long> gap_min;
  std::vector<char> gap_unknown;
};

Shape make_shape(const std::vector<BlockId>& pattern, const Assignment& sigma,
                 long long min_block_len) {
  Shape sh;
  sh.gap_min.push_back(0);
  sh.gap_unknown.push_back(0);
  bool open_run = false;
  for (BlockId b : pattern) {
    if (const SymbolString* v = sigma.get_if(b)) {
      if (v->empty()) continue;  // contributes nothing, breaks nothing
      if (!open_run) {
        sh.lits.emplace_back();
        open_run = true;
      }
      sh.lits.back().insert(sh.lits.back().end(), v->begin(), v->end());
    } else {
      if (open_run) {
        sh.gap_min.push_back(0);
        sh.gap_unknown.push_back(0);
        open_run = false;
      }
      sh.gap_min.back() += min_block_len;
      sh.gap_unknown.back() = 1;
    }
  }
  if (sh.gap_min.size() == sh.lits.size()) {
    sh.gap_min.push_back(0);
    sh.gap_unknown.push_back(0);
  }
  return sh;
}

bool match_at(const SymbolString& text, const SymbolString& word, std::size_t at) {
  if (at + word.size() > text.size()) return false;
  return std::equal(word.begin(), word.end(), text.begin() + at);
}

std::size_t find_from(const SymbolString& text, const SymbolString& word, std::size_t from) {
  if (word.empty()) return from <= text.size() ? from : kNoPos;
  if (word.size() > text.size()) return kNoPos;
  for (std::size_t i = from; i + word.size() <= text.size(); ++i)
    if (std::equal(word.begin(), word.end(), text.begin() + i)) return i;
  return kNoPos;
}

// Can the partially assigned pattern still cover the whole target? Unknown
// blocks may take any word with length >= the per-block minimum and have no
// upper bound, so greedy leftmost placement of the known runs is exact.
bool shape_feasible(const SymbolString& target, const Shape& sh) {
  long long total_min = 0;
  for (const auto& l : sh.lits) total_min += static_cast<long long>(l.size());
  for (long long g : sh.gap_min) total_min += g;
  if (total_min > static_cast<long long>(target.size())) return false;

  const std::size_t n = sh.lits.size();
  if (n == 0) {
    // Either everything assigned with empty values (cannot equal a non-empty
    // target) or some unknown block that can absorb the full target.
    for (char u : sh.gap_unknown)
      if (u) return true;
    return target.empty();
  }

  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const SymbolString& lit = sh.lits[i];
    if (i == 0 && !sh.gap_unknown[0]) {
      if (!match_at(target, lit, 0)) return false;
      pos = lit.size();
      if (n == 1 && !sh.gap_unknown[1]) return pos == target.size();
      continue;
    }
    if (i + 1 == n && !sh.gap_unknown[n]) {
      if (lit.size() > target.size()) return false;
      std::size_t at = target.size() - lit.size();
      if (!match_at(target, lit, at)) return false;
      return static_cast<long long>(at) >=
             static_cast<long long>(pos) + sh.gap_min[i];
    }
    std::size_t at = find_from(target, lit, pos + static_cast<std::size_t>(sh.gap_min[i]));
    if (at == kNoPos) return false;
    pos = at + lit.size();
  }
  return static_cast<long long>(target.size()) - static_cast<long long>(pos) >=
         sh.gap_min.back();
}

struct Searcher {
  const System& sys;
  const std::vector<Equation>& eqs;
  const SolveOptions& opts;
  std::uint64_t& branches;
  long long min_len;  // 0 under AllowEmpty, else 1

  std::vector<BlockId> order;                  // first-occurrence order
  std::vector<std::pair<int, int>> first_occ;  // block -> (equation, position)
  std::vector<std::vector<int>> eqs_with;      // block -> equations containing it
  Assignment sigma;

  Searcher(const System& s, const std::vector<Equation>& e, const SolveOptions& o,
           std::uint64_t& br)
      : sys(s), eqs(e), opts(o), branches(br) {
    min_len = s.semantics == Semantics::AllowEmpty ? 0 : 1;
    std::vector<char> seen(s.block_count(), 0);
    first_occ.assign(s.block_count(), {-1, -1});
    eqs_with.assign(s.block_count(), {});
    for (std::size_t ei = 0; ei < eqs.size(); ++ei) {
      for (std::size_t pi = 0; pi < eqs[ei].pattern.size(); ++pi) {
        BlockId b = eqs[ei].pattern[pi];
        if (!seen[b]) {
          seen[b] = 1;
          order.push_back(b);
          first_occ[b] = {static_cast<int>(ei), static_cast<int>(pi)};
        }
        if (eqs_with[b].empty() || eqs_with[b].back() != static_cast<int>(ei))
          eqs_with[b].push_back(static_cast<int>(ei));
      }
    }
  }

  bool equation_feasible(int ei) const {
    return shape_feasible(eqs[ei].target, make_shape(eqs[ei].pattern, sigma, min_len));
  }

  bool all_feasible() const {
    for (std::size_t ei = 0; ei < eqs.size(); ++ei)
      if (!equation_feasible(static_cast<int>(ei))) return false;
    return true;
  }

  // Blocks are assigned in first-occurrence order, so when block b is up,
  // every position before its first occurrence is already assigned and the
  // value of b must start right after that prefix of the target.
  std::size_t anchor(BlockId b) const {
    auto [ei, pi] = first_occ[b];
    const auto& pat = eqs[ei].pattern;
    std::size_t at = 0;
    for (int q = 0; q < pi; ++q) at += sigma.get(pat[q]).size();
    return at;
  }

  bool try_value(BlockId b, SymbolString value) {
    ++branches;
    if (branches > opts.branch_cap) throw BudgetExceeded(branches);
    sigma.set(b, std::move(value));
    for (int ei : eqs_with[b])
      if (!equation_feasible(ei)) {
        sigma.unset(b);
        return false;
      }
    return true;
  }

  bool dfs(std::size_t depth) {
    if (depth == order.size()) return true;
    BlockId b = order[depth];
    auto [ei, pi] = first_occ[b];
    const SymbolString& target = eqs[ei].target;
    std::size_t at = anchor(b);

    if (min_len == 0) {
      if (try_value(b, {})) {
        if (dfs(depth + 1)) return true;
        sigma.unset(b);
      }
    }
    // Leave room for the minimum lengths of the remaining home positions.
    long long room = static_cast<long long>(target.size()) - static_cast<long long>(at);
    for (std::size_t q = pi + 1; q < eqs[ei].pattern.size(); ++q) {
      const SymbolString* v = sigma.get_if(eqs[ei].pattern[q]);
      room -= v ? static_cast<long long>(v->size()) : min_len;
    }

    // The value must be a substring of every other target containing the
    // block, so grow the candidate slice while tracking where it still
    // occurs elsewhere and stop as soon as some occurrence set runs dry.
    std::vector<std::vector<std::size_t>> occ;
    for (int oe : eqs_with[b])
      if (oe != ei) {
        occ.emplace_back(eqs[oe].target.size());
        auto& v = occ.back();
        v.resize(eqs[oe].target.size());
        for (std::size_t s = 0; s < v.size(); ++s) v[s] = s;
      }
    for (long long len = 1; len <= room; ++len) {
      SymbolId next = target[at + static_cast<std::size_t>(len) - 1];
      bool alive = true;
      for (std::size_t oi = 0, ci = 0; oi < eqs_with[b].size(); ++oi) {
        if (eqs_with[b][oi] == ei) continue;
        const SymbolString& other = eqs[eqs_with[b][oi]].target;
        auto& positions = occ[ci++];
        std::size_t kept = 0;
        for (std::size_t s : positions) {
          std::size_t end = s + static_cast<std::size_t>(len) - 1;
          if (end < other.size() && other[end] == next) positions[kept++] = s;
        }
        positions.resize(kept);
        if (kept == 0) alive = false;
      }
      if (!alive) break;
      if (try_value(b, SymbolString(target.begin() + at, target.begin() + at + len))) {
        if (dfs(depth + 1)) return true;
        sigma.unset(b);
      }
    }
    return false;
  }
};

SolveOutcome solve_over(const System& sys, const std::vector<Equation>& eqs,
                        const SolveOptions& opts, std::uint64_t& branches) {
  Searcher s(sys, eqs, opts, branches);
  SolveOutcome out;
  if (s.all_feasible() && s.dfs(0)) out.witness = std::move(s.sigma);
  out.branches = branches;
  return out;
}

}  // namespace

SolveOutcome solve_xp(const System& sys, const SolveOptions& opts) {
  if (sys.deletion_budget.value_or(0) != 0)
    throw Error("solve_xp requires a zero deletion budget; use solve_deletions_xp");
  std::uint64_t branches = 0;
  SolveOutcome out = solve_over(sys, sys.equations(), opts, branches);
  if (out.sat()) {
    VerifyResult chk = verify(sys, *out.witness);
    if (!chk.ok) throw InternalInconsistency("solve_xp produced a bad witness: " + chk.reason);
  }
  return out;
}

SolveOutcome solve_deletions_xp(const System& sys, int budget, const SolveOptions& opts) {
  if (budget < 0) throw Error("deletion budget must be non-negative");
  std::vector<std::pair<int, int>> positions;  // lexicographic (equation, position)
  for (std::size_t ei = 0; ei < sys.equations().size(); ++ei)
    for (std::size_t p = 0; p < sys.equations()[ei].target.size(); ++p)
      positions.emplace_back(static_cast<int>(ei), static_cast<int>(p));

  std::uint64_t branches = 0;
  const int n = static_cast<int>(positions.size());
  for (int cnt = 0; cnt <= std::min(budget, n); ++cnt) {
    std::vector<int> idx(cnt);
    for (int i = 0; i < cnt; ++i) idx[i] = i;
    while (true) {
      ++branches;
      if (branches > opts.branch_cap) throw BudgetExceeded(branches);

      std::vector<Equation> reduced = sys.equations();
      bool emptied = false;
      for (int i = cnt - 1; i >= 0; --i) {  // back to front keeps indices valid
        auto [ei, p] = positions[idx[i]];
        auto& tgt = reduced[ei].target;
        tgt.erase(tgt.begin() + p);
        if (tgt.empty()) emptied = true;
      }
      if (!emptied) {
        SolveOutcome sub = solve_over(sys, reduced, opts, branches);
        if (sub.sat()) {
          SolveOutcome out;
          out.witness = std::move(sub.witness);
          out.branches = branches;
          VerifyResult chk = verify_deletions(sys, *out.witness, budget);
          if (!chk.ok)
            throw InternalInconsistency("solve_deletions_xp produced a bad witness: " +
                                        chk.reason);
          return out;
        }
      }

      int i = cnt - 1;
      while (i >= 0 && idx[i] == n - cnt + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < cnt; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  SolveOutcome out;
  out.branches = branches;
  return out;
}

}  // namespace streq
