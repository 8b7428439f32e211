#include <doctest.h>

#include <string>
#include <vector>

#include "streq/core.hpp"
#include "streq/io.hpp"
#include "streq/lcs.hpp"
#include "streq/reductions.hpp"
#include "test_support.hpp"

using namespace streq;
using namespace testsup;

namespace {

// Interns plain strings so multi_lcs can be driven from char data.
struct Interner {
  System sys;
  SymbolString in(const std::string& s) { return word(sys, s); }
  std::string out(const SymbolString& w) { return flat(sys, w); }
  std::string lcs(const std::vector<std::string>& words) {
    std::vector<SymbolString> ws;
    for (const auto& w : words) ws.push_back(in(w));
    return out(multi_lcs(ws));
  }
};

}  // namespace

TEST_CASE("multi_lcs on pinned inputs") {
  Interner it;
  CHECK(it.lcs({"abc"}) == "abc");
  CHECK(it.lcs({"abcd", "acbd"}) == "abd");
  CHECK(it.lcs({"ab", "cd"}) == "");
  CHECK(it.lcs({"", "ab"}) == "");
  CHECK(it.lcs({"abab", "baba", "aabb"}) == "ab");
  CHECK(it.lcs({"xyz", "xyz", "xyz"}) == "xyz");
}

TEST_CASE("multi_lcs result is a maximum-length common subsequence") {
  Interner it;
  auto check_words = [&](const std::vector<std::string>& words) {
    std::string got = it.lcs(words);
    CAPTURE(words.size() > 0 ? words[0] : "");
    CAPTURE(words.size() > 1 ? words[1] : "");
    CAPTURE(words.size() > 2 ? words[2] : "");
    for (const auto& w : words) CHECK(is_subseq_str(got, w));
    CHECK(static_cast<int>(got.size()) == lcs_len_enum(words));
  };

  const auto pool = ab_words(4);
  for (const auto& x : pool)
    for (const auto& y : pool) check_words({x, y});
  const auto small = ab_words(3);
  for (const auto& x : small)
    for (const auto& y : small)
      for (const auto& z : small) check_words({x, y, z});
}

TEST_CASE("multi_lcs length is insensitive to word order") {
  Interner it;
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    std::string x = rng.ab_word(5);
    std::string y = rng.ab_word(5);
    std::string z = rng.ab_word(5);
    std::size_t fwd = it.lcs({x, y, z}).size();
    CHECK(it.lcs({z, y, x}).size() == fwd);
    CHECK(it.lcs({y, x, z}).size() == fwd);
  }
}

TEST_CASE("solve_deletions_lcs decides small systems") {
  SUBCASE("one deletion reconciles two targets") {
    System sys = make({{"ab", "X"}, {"b", "X"}});
    SolveOutcome out = solve_deletions_lcs(sys, 1);
    REQUIRE(out.sat());
    CHECK(value_str(sys, *out.witness, "X") == "b");
    CHECK(verify_deletions(sys, *out.witness, 1).ok);
    CHECK_FALSE(solve_deletions_lcs(sys, 0).sat());
  }

  SUBCASE("a too-long expansion cannot be absorbed by deletions") {
    System sys = make({{"a", "AB"}});
    CHECK_FALSE(solve_deletions_lcs(sys, 2).sat());
  }

  SUBCASE("the same split works across unequal targets") {
    System sys = make({{"abc", "AB"}, {"ab", "AB"}});
    SolveOutcome out = solve_deletions_lcs(sys, 1);
    REQUIRE(out.sat());
    CHECK(verify_deletions(sys, *out.witness, 1).ok);
  }

  SUBCASE("a tail block can receive the empty word when blocks may be empty") {
    System sys = make({{"a", "*B"}, {"b", "*B"}}, Semantics::AllowEmpty);
    SolveOutcome out = solve_deletions_lcs(sys, 0);
    REQUIRE(out.sat());
    CHECK(value_str(sys, *out.witness, "B") == "");
    CHECK(verify_deletions(sys, *out.witness, 0).ok);
  }

  SUBCASE("budget must be non-negative") {
    System sys = make({{"a", "X"}});
    CHECK_THROWS_AS(solve_deletions_lcs(sys, -1), Error);
  }
}

TEST_CASE("solve_deletions_lcs agrees with the deletion-set solver") {
  Rng rng(42);
  int sat_seen = 0;
  for (int i = 0; i < 150; ++i) {
    auto [sys, d] = random_deletion_system(rng);
    SolveOutcome via_lcs = solve_deletions_lcs(sys, d);
    SolveOutcome via_sets = solve_deletions_xp(sys, d);
    CAPTURE(render_instance(sys));
    CAPTURE(d);
    CHECK(via_lcs.sat() == via_sets.sat());
    if (via_lcs.sat()) {
      ++sat_seen;
      CHECK(verify_deletions(sys, *via_lcs.witness, d).ok);
    }
  }
  CHECK(sat_seen > 20);
}

TEST_CASE("deletion systems built from LCS instances behave like the LCS") {
  SUBCASE("two words, shared block") {
    LcsEmbedding emb = gen_from_lcs_multi({"abcd", "acbd"});
    CHECK(emb.total_length == 8);
    CHECK(emb.copies == 2);
    CHECK(emb.budget(3) == 2);
    CHECK_THROWS_AS(emb.budget(0), MinLcsOne);

    SolveOutcome at3 = solve_deletions_lcs(emb.system, emb.budget(3));
    REQUIRE(at3.sat());
    CHECK(at3.witness->get(0).size() >= 3);
    CHECK_FALSE(solve_deletions_lcs(emb.system, emb.budget(4)).sat());
    CHECK(solve_deletions_lcs(emb.system, emb.budget(2)).sat());
  }

  SUBCASE("identical words need no deletions") {
    LcsEmbedding emb = gen_from_lcs_multi({"ab", "ab"});
    CHECK(emb.budget(2) == 0);
    CHECK(solve_deletions_lcs(emb.system, 0).sat());
  }
}
