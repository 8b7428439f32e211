#pragma once

#include <optional>
#include <string>
#include <vector>

#include "streq/exact.hpp"
#include "streq/system.hpp"

namespace streq {

// The proposition "the value of `block` has length <= bound".
struct LengthVar {
  BlockId block;
  int bound;
};

struct Lit {
  int var;        // index into Formula2SAT::vars
  bool positive;  // true: the <= proposition itself; false: its negation
};

struct Clause {
  std::vector<Lit> lits;  // one or two literals
  int family;             // construction rule 1..6 that emitted it
  int equation;           // originating equation index, or -1
};

struct Formula2SAT {
  std::vector<LengthVar> vars;
  std::vector<Clause> clauses;
  bool contradiction = false;  // some clause simplified to the empty clause

  std::optional<int> find_var(BlockId block, int bound) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i].block == block && vars[i].bound == bound) return static_cast<int>(i);
    return std::nullopt;
  }
};

// Length l is valid for a border block iff every target whose pattern starts
// with the block has the same length-l prefix, every target whose pattern
// ends with it has the same length-l suffix, and those words agree; l beyond
// any such target's length is invalid. word[l] is the common word.
struct BorderBlockLengths {
  BlockId block;
  std::vector<char> valid;        // indexed by length 0..t
  std::vector<SymbolString> word; // defined where valid
};

struct ValidLengthTable {
  int t = 0;                             // maximum target length
  std::vector<BorderBlockLengths> blocks;  // ascending block id

  const BorderBlockLengths* find(BlockId b) const {
    for (const auto& e : blocks)
      if (e.block == b) return &e;
    return nullptr;
  }
};

ValidLengthTable compute_valid_lengths(const System& sys);

// Emits the clause families over variables (block, bound) with bound in
// [0, t-1]; "len <= bound" literals are clamped to constants for bound >= t
// (true) and bound < 0 (false), and clauses simplify accordingly:
//   1. every border block is non-empty
//   2. monotonicity of the length bounds
//   3. invalid lengths push the bound down
//   4. a single-block pattern forces the full target length
//   5. in a two-block pattern the partner covers the rest of the target
//   6. first and last block leave room for the interior jokers
Formula2SAT build_formula(const System& sys, const ValidLengthTable& table);

// Implication-graph / SCC decision procedure. Returns a satisfying valuation
// (deterministic for a given formula) or nullopt.
std::optional<std::vector<bool>> two_sat(const Formula2SAT& formula);

// One clause per line, literals named like "A<=2" / "~A<=2".
std::string dump_formula(const System& sys, const Formula2SAT& formula);

// Decides a non-erasing, zero-budget system in which every interior pattern
// position is a joker. Border blocks get the shortest length admitted by the
// 2SAT valuation; interior jokers then split the remaining middle of each
// target left to right (one symbol each, the last takes the remainder).
// Throws NotBorderOnly if an interior position holds a named block.
SolveOutcome solve_border(const System& sys);

}  // namespace streq
