#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "sc/symmetrize.hpp"

using namespace sc;

namespace {

FamilyPtr c2c3() {
  return make_family({cyclic_group_named("A", 2, "a"),
                      cyclic_group_named("B", 3, "b")});
}

std::vector<Word> all_reduced_words(const FamilyPtr& fam, int max_len) {
  std::vector<Word> out{Word{fam, {}}};
  std::size_t begin = 0;
  for (int l = 1; l <= max_len; ++l) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (int f = 0; f < fam->count(); ++f) {
        if (!out[i].letters.empty() && out[i].letters.back().factor == f)
          continue;
        for (elem_t e = 1; e < fam->factor(f).order(); ++e) {
          Word w = out[i];
          w.letters.push_back({static_cast<std::uint16_t>(f), e});
          out.push_back(std::move(w));
        }
      }
    begin = end;
  }
  return out;
}

// Independent oracle: every weakly cyclically reduced conjugate of a seed or
// a seed inverse reachable with a conjugator of bounded length.
std::vector<Word> brute_closure(const FamilyPtr& fam,
                                const std::vector<Word>& seeds, int conj_len) {
  std::set<std::vector<Letter>> found;
  std::vector<Word> conjugators = all_reduced_words(fam, conj_len);
  for (const Word& s : seeds)
    for (const Word& base : {s, invert(s)})
      for (const Word& x : conjugators) {
        Word w = multiply(multiply(x, base), invert(x));
        if (!w.empty() && is_weakly_cyclically_reduced(w))
          found.insert(w.letters);
      }
  std::vector<Word> out;
  for (const auto& letters : found) out.push_back(Word{fam, letters});
  return out;
}

std::set<std::string> literals(const std::vector<Word>& words) {
  std::set<std::string> out;
  for (const Word& w : words) out.insert(to_literal(w));
  return out;
}

// One cyclic permutation, merging the wrapped boundary pair when it lands in
// a single factor.
Word rotate_member(const Word& w, std::size_t k) {
  std::vector<Letter> raw(w.letters.begin() + k, w.letters.end());
  raw.insert(raw.end(), w.letters.begin(), w.letters.begin() + k);
  return normalize(w.family, raw);
}

}  // namespace

TEST_CASE("rotation-mode closure of (ab)") {
  auto fam = c2c3();
  Word ab = parse_word_literal(fam, "A.a B.b");
  SymmetrizedSet set = symmetrized_closure(fam, {ab});
  auto members = materialize(set);
  REQUIRE(literals(members) ==
          std::set<std::string>{"A.a B.b", "B.b A.a", "B.b^2 A.a",
                                "A.a B.b^2"});
  REQUIRE(member_count(set) == 4);
  REQUIRE(contains(set, parse_word_literal(fam, "B.b A.a")));
  REQUIRE_FALSE(contains(set, Word{fam, {}}));
}

TEST_CASE("full-conjugate closure of (ab) equals the brute-force closure") {
  auto fam = c2c3();
  Word ab = parse_word_literal(fam, "A.a B.b");
  SymmetrizedSet set =
      symmetrized_closure(fam, {ab}, ClosureMode::full_conjugates);
  auto members = materialize(set);
  auto brute = brute_closure(fam, {ab}, 3);
  REQUIRE(literals(members) == literals(brute));
  // the two length-3 representatives beyond the rotation closure
  REQUIRE(contains(set, parse_word_literal(fam, "B.b^2 A.a B.b^2")));
  REQUIRE(contains(set, parse_word_literal(fam, "B.b A.a B.b")));
  REQUIRE(member_count(set) == 6);
}

TEST_CASE("single letter seeds") {
  auto fam = c2c3();
  Word a = parse_word_literal(fam, "A.a");
  SymmetrizedSet set = symmetrized_closure(fam, {a});
  REQUIRE(literals(materialize(set)) == std::set<std::string>{"A.a"});
  REQUIRE(contains(set, a));
}

TEST_CASE("empty seeds are rejected") {
  auto fam = c2c3();
  REQUIRE_THROWS_AS(symmetrized_closure(fam, {Word{fam, {}}}),
                    ValidationError);
  // a seed that cancels away entirely is caught by the same gate
  Word w = parse_word_literal(fam, "B.b A.a A.a B.b^2");
  REQUIRE(w.empty());
  REQUIRE_THROWS_AS(symmetrized_closure(fam, {w}), ValidationError);
}

TEST_CASE("seeds are preprocessed by weak cyclic reduction") {
  auto fam = c2c3();
  // b a b^2 conjugates down to the single letter a
  Word conj = parse_word_literal(fam, "B.b A.a B.b^2");
  REQUIRE_FALSE(is_weakly_cyclically_reduced(conj));
  SymmetrizedSet set = symmetrized_closure(fam, {conj});
  REQUIRE(literals(materialize(set)) == std::set<std::string>{"A.a"});
}

TEST_CASE("power-relator closure at n = 2 against brute force") {
  auto fam = make_family({cyclic_group_named("A", 2, "a"),
                          cyclic_group_named("B", 3, "b"),
                          alternating_group(5)});
  elem_t h = fam->factor(2).require("(12)(34)");
  Word seed = normalize(
      fam, std::vector<Letter>{{2, h}, {0, 1}, {2, h}, {0, 1}});  // (h a)^2
  REQUIRE(seed.length() == 4);

  SECTION("full-conjugate mode matches the brute-force oracle") {
    SymmetrizedSet set =
        symmetrized_closure(fam, {seed}, ClosureMode::full_conjugates);
    auto members = materialize(set);
    auto brute = brute_closure(fam, {seed}, 2);
    REQUIRE(literals(members) == literals(brute));
    REQUIRE(member_count(set) == 60);  // 2 rotations + 58 splits
  }
  SECTION("rotation mode keeps the two rotations") {
    SymmetrizedSet set = symmetrized_closure(fam, {seed});
    REQUIRE(member_count(set) == 2);
    REQUIRE(set.classes.size() == 1);  // self-inverse orbit for an involution
    REQUIRE(set.classes[0].period == 2);
  }
}

TEST_CASE("closure invariants") {
  auto fam = c2c3();
  Word ab7 = parse_word_literal(fam, "(A.a B.b)^7");
  Word bab = parse_word_literal(fam, "B.b A.a B.b");
  for (ClosureMode mode :
       {ClosureMode::rotations, ClosureMode::full_conjugates}) {
    SymmetrizedSet set = symmetrized_closure(fam, {ab7, bab}, mode);
    auto members = materialize(set);

    // every member is weakly cyclically reduced and nonempty
    for (const Word& w : members) {
      REQUIRE_FALSE(w.empty());
      REQUIRE(is_weakly_cyclically_reduced(w));
    }
    // closed under inversion and under merged rotations
    for (const Word& w : members) {
      REQUIRE(contains(set, invert(w)));
      for (std::size_t k = 0; k < w.length(); ++k)
        REQUIRE(contains(set, rotate_member(w, k)));
    }
    // idempotence: closing the materialized members changes nothing
    SymmetrizedSet again = symmetrized_closure(fam, members, mode);
    REQUIRE(literals(materialize(again)) == literals(members));
    // lazy membership agrees with the materialized set
    auto lits = literals(members);
    for (const Word& w : all_reduced_words(fam, 4)) {
      if (w.empty()) continue;
      REQUIRE(contains(set, w) == (lits.count(to_literal(w)) > 0));
    }
  }
}

TEST_CASE("least rotation and primitive period") {
  REQUIRE(least_rotation_index({3, 1, 2}) == 1);
  REQUIRE(least_rotation_index({1, 1, 1}) == 0);
  REQUIRE(least_rotation_index({2, 1, 2, 1}) == 1);
  REQUIRE(primitive_period({2, 1, 2, 1}) == 2);
  REQUIRE(primitive_period({2, 1, 2, 2}) == 4);
  REQUIRE(primitive_period({7}) == 1);
}
