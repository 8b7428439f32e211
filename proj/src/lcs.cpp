#include "streq/lcs.hpp"

#include <algorithm>
#include <cstdint>

#include "streq/core.hpp"

namespace streq {

namespace {

constexpr std::uint64_t kMaxCells = 64u * 1024u * 1024u;

}  // namespace

SymbolString multi_lcs(const std::vector<SymbolString>& words) {
  if (words.empty()) throw Error("multi_lcs needs at least one word");
  const std::size_t h = words.size();
  std::vector<std::size_t> dim(h), stride(h);
  std::uint64_t cells = 1;
  for (std::size_t j = 0; j < h; ++j) {
    dim[j] = words[j].size() + 1;
    cells *= dim[j];
    if (cells > kMaxCells) throw Error("multi_lcs table too large");
  }
  stride[h - 1] = 1;
  for (std::size_t j = h - 1; j > 0; --j) stride[j - 1] = stride[j] * dim[j];

  std::vector<int> table(static_cast<std::size_t>(cells), 0);
  std::vector<std::size_t> ix(h, 0);
  // iterate states in row-major order; every predecessor state is ready
  for (std::size_t flat = 0; flat < cells; ++flat) {
    bool on_boundary = false;
    for (std::size_t j = 0; j < h; ++j)
      if (ix[j] == 0) on_boundary = true;
    if (!on_boundary) {
      SymbolId c = words[0][ix[0] - 1];
      bool all_match = true;
      for (std::size_t j = 1; j < h && all_match; ++j)
        all_match = words[j][ix[j] - 1] == c;
      int best = 0;
      if (all_match) {
        std::size_t diag = flat;
        for (std::size_t j = 0; j < h; ++j) diag -= stride[j];
        best = table[diag] + 1;
      }
      for (std::size_t j = 0; j < h; ++j)
        best = std::max(best, table[flat - stride[j]]);
      table[flat] = best;
    }
    // advance odometer
    for (std::size_t j = h; j-- > 0;) {
      if (++ix[j] < dim[j]) break;
      ix[j] = 0;
    }
  }

  // backtrack: prefer the match step; otherwise skip in the first word whose
  // skip preserves the value
  for (std::size_t j = 0; j < h; ++j) ix[j] = dim[j] - 1;
  std::size_t flat = cells - 1;
  SymbolString out;
  while (table[flat] > 0) {
    bool interior = true;
    for (std::size_t j = 0; j < h; ++j)
      if (ix[j] == 0) interior = false;
    bool all_match = interior;
    if (interior) {
      SymbolId c = words[0][ix[0] - 1];
      for (std::size_t j = 1; j < h && all_match; ++j)
        all_match = words[j][ix[j] - 1] == c;
    }
    if (all_match) {
      out.push_back(words[0][ix[0] - 1]);
      for (std::size_t j = 0; j < h; ++j) {
        --ix[j];
        flat -= stride[j];
      }
      continue;
    }
    bool moved = false;
    for (std::size_t j = 0; j < h && !moved; ++j) {
      if (ix[j] == 0) continue;
      if (table[flat - stride[j]] == table[flat]) {
        --ix[j];
        flat -= stride[j];
        moved = true;
      }
    }
    if (!moved) throw InternalInconsistency("multi_lcs backtrack stuck");
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

struct Slot {
  int eq;
  int pos;
};

struct LcsSearch {
  const System& sys;
  int budget;
  const SolveOptions& opts;
  std::uint64_t branches = 0;

  std::vector<Slot> slots;    // flattened (equation, position) in order
  std::vector<int> start;     // chosen 1-based starting positions
  std::optional<Assignment> found;

  LcsSearch(const System& s, int b, const SolveOptions& o) : sys(s), budget(b), opts(o) {
    for (std::size_t ei = 0; ei < s.equations().size(); ++ei)
      for (std::size_t p = 0; p < s.equations()[ei].pattern.size(); ++p)
        slots.push_back({static_cast<int>(ei), static_cast<int>(p)});
    start.assign(slots.size(), 1);
  }

  bool evaluate() {
    ++branches;
    if (branches > opts.branch_cap) throw BudgetExceeded(branches);

    // regions per block, in (equation, position) order
    std::vector<std::vector<SymbolString>> regions(sys.block_count());
    for (std::size_t si = 0; si < slots.size(); ++si) {
      const auto& eq = sys.equations()[slots[si].eq];
      int from = start[si];  // 1-based
      int to = slots[si].pos + 1 < static_cast<int>(eq.pattern.size())
                   ? start[si + 1] - 1
                   : static_cast<int>(eq.target.size());
      SymbolString region;
      for (int p = from; p <= to; ++p) region.push_back(eq.target[p - 1]);
      regions[eq.pattern[slots[si].pos]].push_back(std::move(region));
    }

    Assignment sigma;
    for (BlockId b = 0; b < sys.block_count(); ++b) {
      if (regions[b].empty()) continue;
      SymbolString v = multi_lcs(regions[b]);
      if (v.empty() && sys.semantics == Semantics::NonErasing) return false;
      sigma.set(b, std::move(v));
    }
    if (!verify_deletions(sys, sigma, budget).ok) return false;
    found = std::move(sigma);
    return true;
  }

  bool enumerate(std::size_t si) {
    if (si == slots.size()) return evaluate();
    const auto& eq = sys.equations()[slots[si].eq];
    int lo = (slots[si].pos > 0) ? start[si - 1] : 1;  // non-decreasing per equation
    // When blocks may be empty, a start one past the end gives an empty
    // region, which is the only way a block at the tail of a pattern can
    // receive the empty word.
    const int hi = static_cast<int>(eq.target.size()) +
                   (sys.semantics == Semantics::AllowEmpty ? 1 : 0);
    for (int v = lo; v <= hi; ++v) {
      start[si] = v;
      if (enumerate(si + 1)) return true;
    }
    return false;
  }
};

}  // namespace

SolveOutcome solve_deletions_lcs(const System& sys, int budget, const SolveOptions& opts) {
  if (budget < 0) throw Error("deletion budget must be non-negative");
  LcsSearch search(sys, budget, opts);
  SolveOutcome out;
  if (!search.slots.empty() && search.enumerate(0)) out.witness = std::move(search.found);
  out.branches = search.branches;
  return out;
}

}  // namespace streq
