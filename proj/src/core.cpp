#include "streq/core.hpp"

#include <algorithm>
#include <set>

namespace streq {

SystemStats classify(const System& sys) {
  SystemStats st;
  st.r = static_cast<int>(sys.equations().size());
  std::set<BlockId> blocks;
  const SymbolString* first_target = nullptr;
  for (const auto& eq : sys.equations()) {
    st.c = std::max(st.c, static_cast<int>(eq.pattern.size()));
    st.t = std::max(st.t, static_cast<int>(eq.target.size()));
    if (!first_target) first_target = &eq.target;
    else if (*first_target != eq.target) st.unique_target = false;

    std::set<BlockId> named_here;
    for (std::size_t i = 0; i < eq.pattern.size(); ++i) {
      BlockId b = eq.pattern[i];
      blocks.insert(b);
      const bool interior = i > 0 && i + 1 < eq.pattern.size();
      if (interior && !sys.is_joker(b)) st.only_border_blocks = false;
      if (!sys.is_joker(b) && !named_here.insert(b).second) st.duplicate_free = false;
    }
  }
  st.k = static_cast<int>(blocks.size());
  return st;
}

SymbolString expand(const Assignment& sigma, const std::vector<BlockId>& pattern) {
  SymbolString out;
  for (BlockId b : pattern) {
    const SymbolString& v = sigma.get(b);  // throws MissingBlock if absent
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

bool is_subsequence(const SymbolString& needle, const SymbolString& haystack) {
  std::size_t i = 0;
  for (std::size_t j = 0; i < needle.size() && j < haystack.size(); ++j)
    if (needle[i] == haystack[j]) ++i;
  return i == needle.size();
}

namespace {

// Checks that every block occurring in the system has an entry and that
// non-erasing semantics (if active) are respected. Returns ok or a diagnostic.
VerifyResult check_entries(const System& sys, const Assignment& sigma) {
  VerifyResult res;
  for (std::size_t e = 0; e < sys.equations().size(); ++e) {
    for (BlockId b : sys.equations()[e].pattern) {
      const SymbolString* v = sigma.get_if(b);
      if (!v) {
        res.ok = false;
        res.reason = "no value for block " + sys.block_name(b);
        res.failed_equation = static_cast<int>(e);
        return res;
      }
      if (sys.semantics == Semantics::NonErasing && v->empty()) {
        res.ok = false;
        res.reason = "block " + sys.block_name(b) + " is empty under non-erasing semantics";
        res.failed_equation = static_cast<int>(e);
        return res;
      }
    }
  }
  return res;
}

}  // namespace

VerifyResult verify(const System& sys, const Assignment& sigma) {
  VerifyResult res = check_entries(sys, sigma);
  if (!res.ok) return res;
  for (std::size_t e = 0; e < sys.equations().size(); ++e) {
    const auto& eq = sys.equations()[e];
    SymbolString got = expand(sigma, eq.pattern);
    if (got == eq.target) continue;
    res.ok = false;
    res.failed_equation = static_cast<int>(e);
    std::size_t n = std::min(got.size(), eq.target.size());
    std::size_t p = 0;
    while (p < n && got[p] == eq.target[p]) ++p;
    res.mismatch_pos = static_cast<int>(p);
    if (got.size() != eq.target.size() && p == n)
      res.reason = "expansion has length " + std::to_string(got.size()) +
                   ", target has length " + std::to_string(eq.target.size());
    else
      res.reason = "expansion differs from target at position " + std::to_string(p);
    return res;
  }
  return res;
}

VerifyResult verify_deletions(const System& sys, const Assignment& sigma, int budget) {
  VerifyResult res = check_entries(sys, sigma);
  if (!res.ok) return res;
  long long deleted = 0;
  for (std::size_t e = 0; e < sys.equations().size(); ++e) {
    const auto& eq = sys.equations()[e];
    SymbolString got = expand(sigma, eq.pattern);
    if (got.empty()) {
      res.ok = false;
      res.failed_equation = static_cast<int>(e);
      res.reason = "deletions may not erase a whole target";
      return res;
    }
    if (!is_subsequence(got, eq.target)) {
      res.ok = false;
      res.failed_equation = static_cast<int>(e);
      res.reason = "expansion is not a subsequence of the target";
      return res;
    }
    deleted += static_cast<long long>(eq.target.size()) - static_cast<long long>(got.size());
  }
  if (deleted > budget) {
    res.ok = false;
    res.reason = "requires " + std::to_string(deleted) + " deletions, budget is " +
                 std::to_string(budget);
  }
  return res;
}

std::string to_string(const System& sys, const SymbolString& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += sys.symbol_name(word[i]);
  }
  return out;
}

}  // namespace streq
