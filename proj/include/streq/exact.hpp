#pragma once

#include <cstdint>
#include <optional>

#include "streq/system.hpp"

namespace streq {

struct SolveOptions {
  std::uint64_t branch_cap = 100'000'000;  // throw BudgetExceeded past this
};

struct SolveOutcome {
  std::optional<Assignment> witness;
  std::uint64_t branches = 0;
  bool sat() const { return witness.has_value(); }
};

// Exhaustive search over substring assignments. Blocks are processed in order
// of first occurrence; for each block the candidate values are the substrings
// of the first target containing it, enumerated by start then end position
// (the empty word first under AllowEmpty semantics). The witness of a
// satisfiable system is the first satisfying assignment in that order.
// Requires a zero/absent deletion budget on the system.
SolveOutcome solve_xp(const System& sys, const SolveOptions& opts = {});

// Decides whether deleting at most `budget` symbols from the targets makes
// the system satisfiable. Deletion counts are tried in increasing order and,
// for a fixed count, deletion position sets in lexicographic order over
// (equation index, position); each reduced system is handed to solve_xp.
// Branches that would empty a target are skipped. The witness satisfies
// verify_deletions(sys, witness, budget).
SolveOutcome solve_deletions_xp(const System& sys, int budget, const SolveOptions& opts = {});

}  // namespace streq
