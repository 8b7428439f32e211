#pragma once

#include <iosfwd>
#include <string>

#include "streq/reductions.hpp"
#include "streq/system.hpp"

namespace streq {

struct EmptyTarget : ParseError {
  using ParseError::ParseError;
};

struct EmptyPattern : ParseError {
  using ParseError::ParseError;
};

// Instance files are line based. '#' starts a comment; blank lines are
// skipped; tokens are whitespace separated.
//
//   semantics: nonerasing | allowempty     (optional, default nonerasing)
//   deletions: <non-negative int>          (optional)
//   eq: <target tokens> | <pattern tokens>
//
// Pattern token "*" introduces a fresh joker; "*" is not allowed in targets.
// Jokers are numbered *1, *2, ... in reading order, so parse(render(s))
// reproduces s exactly.
System parse_instance(std::istream& in);
System parse_instance_string(const std::string& text);
std::string render_instance(const System& sys);

// Display-level equality: same semantics, budget, and equations with the
// same symbol and block spellings.
bool same_system(const System& a, const System& b);

// Graph files:  "n m"  or  "n m k"  header, then m lines "s t" (1-based
// endpoints), then one line of n colors if k was given. An optional line
// "labels: <n tokens>" may follow to override the default vertex labels.
Graph parse_graph(std::istream& in);
Graph parse_graph_string(const std::string& text);
std::string render_graph(const Graph& g);

// Assignment files: one line "<block> = <value tokens>" per block; the value
// may be empty. Unknown block names are errors; fresh symbols are interned
// into the system (verification will reject them naturally).
Assignment parse_assignment(System& sys, std::istream& in);
Assignment parse_assignment_string(System& sys, const std::string& text);
std::string render_assignment(const System& sys, const Assignment& sigma);

}  // namespace streq
