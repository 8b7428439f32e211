#pragma once

#include <string>

#include "streq/system.hpp"

namespace streq {

struct SystemStats {
  int k = 0;  // number of distinct blocks, jokers included
  int r = 0;  // number of equations
  int c = 0;  // maximum pattern length
  int t = 0;  // maximum target length
  bool duplicate_free = true;     // no named block twice within one pattern
  bool only_border_blocks = true; // every interior pattern position is a joker
  bool unique_target = true;      // all equations share one target word

  bool operator==(const SystemStats&) const = default;
};

struct VerifyResult {
  bool ok = true;
  std::string reason;       // empty when ok
  int failed_equation = -1; // index of the first failing equation, or -1
  int mismatch_pos = -1;    // first mismatching symbol position (0-based), or -1

  explicit operator bool() const { return ok; }
};

SystemStats classify(const System& sys);

// Concatenates the assigned values of the pattern, left to right.
// Throws MissingBlock if a block has no entry.
SymbolString expand(const Assignment& sigma, const std::vector<BlockId>& pattern);

// True iff `needle` is a (scattered) subsequence of `haystack`.
bool is_subsequence(const SymbolString& needle, const SymbolString& haystack);

// Exact-match check: every equation's expansion equals its target and the
// system's semantics are respected. Missing entries yield ok=false with a
// diagnostic rather than an exception.
VerifyResult verify(const System& sys, const Assignment& sigma);

// Deletion-tolerant check: every expansion is a subsequence of its target,
// the total number of deleted target symbols is at most `budget`, and the
// system's semantics are respected.
VerifyResult verify_deletions(const System& sys, const Assignment& sigma, int budget);

std::string to_string(const System& sys, const SymbolString& word);

}  // namespace streq
