#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "streq/system.hpp"

namespace streq {

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // 1-based, s < t, sorted
  std::vector<int> colors;                 // empty, or one color per vertex
  std::vector<std::string> labels;         // empty means default labels

  bool colored() const { return !colors.empty(); }
  bool adjacent(int u, int v) const;
  // Default labels are a..z for n <= 26, else v1..vn.
  std::string label(int v) const;
  // Returns a problem description, or nullopt if well-formed. When
  // num_colors > 0 the coloring must exist, stay within 1..num_colors and be
  // proper (no edge inside one color class).
  std::optional<std::string> check(int num_colors = 0) const;
};

enum class ReductionKind {
  CliqueSingleEq,
  CliqueTwoEq,
  CliqueTwoEqEmpty,
  MccSize3,
  CliqueMixed,
};

enum class Role { VertexSelector, EdgeSelector, Gap, Gadget };

struct BlockRole {
  Role role;
  int i = 0;
  int j = 0;
  bool primed = false;
};

struct ReductionOutput {
  ReductionKind kind;
  System system;
  Graph graph;
  int kappa = 0;
  std::map<BlockId, BlockRole> roles;  // one entry per block, jokers included
};

// Single equation: target y0 (e_j y_j)*, pattern * (X_i X_j *) over all
// pairs i<j. Satisfiable iff the graph has a kappa-clique.
ReductionOutput gen_clique_single_eq(const Graph& g, int kappa);

// Two equations over the shared target
//   z x0 (v_i^{kappa-1} x_i)* z y0 (e_j y_j)*;
// the patterns select each clique vertex kappa-1 times in the vertex section
// and each clique edge in the edge section, with primed/unprimed coding
// blocks swapped between the two patterns. Duplicate-free.
ReductionOutput gen_clique_two_eq(const Graph& g, int kappa);

// Variant of gen_clique_two_eq that stays correct when blocks may be empty:
// both targets get a gamma^(2kappa+1) phi1 phi2 prefix (phi2 phi1 in the
// second target), gamma separators around every vertex run, and matching
// gadget blocks in the patterns. Uses AllowEmpty semantics.
ReductionOutput gen_clique_two_eq_empty(const Graph& g, int kappa);

// Multicolored clique with patterns of size at most 3. Needs a proper
// coloring with colors 1..kappa. Per color i: target x (vertices of color i)
// x with pattern * X_i *; edge targets y (e_j y)* and z (e_j z)* with
// patterns * E_ij *, A_ij E_ij B_ij, A_ij X_i *, * X_j B_ij.
ReductionOutput gen_mcc_size3(const Graph& g, int kappa);

// Mixed sizes: vertex target x v_1..v_n split by X_i X_i' (prefix/suffix
// pairs), plus one long equation over y (pre(u) suf(v) y)* matching
// pre(w_i) suf(w_j) for every selected pair.
ReductionOutput gen_clique_mixed(const Graph& g, int kappa);

// Raised when an embedding is asked for a common subsequence of length zero,
// which non-erasing semantics cannot express.
struct MinLcsOne : Error {
  using Error::Error;
};

// One equation T_i == X per input word (single shared block). budget(L) is
// the deletion budget under which the system asks for a common subsequence
// of length at least L; L must be at least 1 under non-erasing semantics.
struct LcsEmbedding {
  System system;
  int total_length = 0;
  int copies = 0;

  int budget(int target_len) const {
    if (target_len < 1)
      throw MinLcsOne("target LCS length must be at least 1 under non-erasing semantics");
    return total_length - copies * target_len;
  }
};

LcsEmbedding gen_from_lcs_multi(const std::vector<std::string>& words);

// Single equation $^d T_1 $^d T_2 ... $^d T_r == X X ... X (r copies); with
// deletion budget d this is satisfiable iff the words have a common
// subsequence of length (sum of lengths - d) / r.
System gen_from_lcs_single(const std::vector<std::string>& words, int budget);

// Reference deciders used to cross-check the generators.
bool clique_oracle(const Graph& g, int kappa);
bool mcc_oracle(const Graph& g, int kappa);

// Reads the selected vertices out of a satisfying assignment. Throws
// DecodeFailure if the assignment does not have the shape the construction
// guarantees for satisfying assignments.
std::set<int> decode(const ReductionOutput& out, const Assignment& sigma);

// Stable spellings used by the command line and the sidecar metadata files.
std::string to_string(ReductionKind kind);
std::optional<ReductionKind> kind_from_string(std::string_view name);
std::string to_string(Role role);
std::optional<Role> role_from_string(std::string_view name);

}  // namespace streq
