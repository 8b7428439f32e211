#pragma once

#include <vector>

#include "streq/exact.hpp"
#include "streq/system.hpp"

namespace streq {

// Longest common subsequence of all input words, computed over the full
// multi-dimensional DP table (cost: product of the word lengths). Ties are
// broken deterministically: backtracking from the full-length state prefers
// a simultaneous match step, and otherwise skips in the earliest word whose
// skip preserves the table value. For [abcd, acbd] this yields abd.
SymbolString multi_lcs(const std::vector<SymbolString>& words);

// Decides the deletion problem by enumerating, per equation, a non-decreasing
// starting position for every pattern block; the region of a block occurrence
// runs from its start to just before the next block's start (the last region
// extends to the end of the target; when blocks may be empty a start one past
// the end makes the region empty). Each block is assigned the LCS of its
// regions and the branch is accepted iff verify_deletions passes. Choices are
// tried in lexicographic order over (equation, position, start).
SolveOutcome solve_deletions_lcs(const System& sys, int budget, const SolveOptions& opts = {});

}  // namespace streq
