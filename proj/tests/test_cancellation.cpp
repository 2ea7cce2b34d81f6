#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "sc/cancellation.hpp"
#include "sc/construct.hpp"

using namespace sc;

namespace {

FamilyPtr c2c3() {
  return make_family({cyclic_group_named("A", 2, "a"),
                      cyclic_group_named("B", 3, "b")});
}

// All semi-reduced prefixes of a reduced word: letter prefixes, plus a letter
// prefix extended by one nonidentity proper divisor of the next letter.
std::set<std::vector<Letter>> semi_reduced_prefixes(const FactorFamily& fam,
                                                    const Word& r) {
  std::set<std::vector<Letter>> out;
  for (std::size_t k = 1; k <= r.length(); ++k)
    out.insert(
        std::vector<Letter>(r.letters.begin(), r.letters.begin() + k));
  for (std::size_t k = 0; k < r.length(); ++k) {
    const Letter next = r.letters[k];
    for (elem_t x = 1; x < fam.factor(next.factor).order(); ++x) {
      if (x == next.elem) continue;
      std::vector<Letter> p(r.letters.begin(), r.letters.begin() + k);
      p.push_back({next.factor, x});
      out.insert(std::move(p));
    }
  }
  return out;
}

// Definition-level piece length between two explicit members: the longest
// word in the intersection of their semi-reduced prefix sets.
int brute_piece_len(const FactorFamily& fam, const Word& r1, const Word& r2) {
  auto p1 = semi_reduced_prefixes(fam, r1);
  auto p2 = semi_reduced_prefixes(fam, r2);
  int best = 0;
  for (const auto& p : p1)
    if (p2.count(p)) best = std::max<int>(best, static_cast<int>(p.size()));
  return best;
}

Word rand_word(const FamilyPtr& fam, std::mt19937_64& rng, int max_len,
               int min_len = 0) {
  for (;;) {
    std::vector<Letter> raw;
    int len = min_len + static_cast<int>(rng() % (max_len - min_len + 1));
    for (int i = 0; i < len; ++i) {
      std::uint16_t f = static_cast<std::uint16_t>(rng() % fam->count());
      elem_t e = static_cast<elem_t>(
          1 + rng() % (fam->factor(f).order() - 1));
      raw.push_back({f, e});
    }
    Word w = normalize(fam, raw);
    if (static_cast<int>(w.length()) >= min_len) return w;
  }
}

}  // namespace

TEST_CASE("max_common_piece on explicit relators") {
  auto fam = c2c3();
  Word ab7 = parse_word_literal(fam, "(A.a B.b)^7");
  Word b2a7 = parse_word_literal(fam, "(B.b^2 A.a)^7");
  SECTION("the (ab)^7 / (b^2 a)^7 pair has a two-letter piece") {
    auto p = max_common_piece(ab7, b2a7);
    REQUIRE(p.has_value());
    REQUIRE(p->word.length() == 2);
    REQUIRE(p->word.letters[0] == Letter{0, 1});  // starts with a
    REQUIRE(p->split_tail);
  }
  SECTION("no common piece between distinct single letters") {
    REQUIRE_FALSE(max_common_piece(parse_word_literal(fam, "A.a"),
                                   parse_word_literal(fam, "B.b"))
                      .has_value());
  }
  SECTION("identical inputs are an error") {
    REQUIRE_THROWS_AS(max_common_piece(ab7, ab7), ValidationError);
  }
  SECTION("symmetry of the piece length") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 60; ++rep) {
      Word r1 = rand_word(fam, rng, 8, 1);
      Word r2 = rand_word(fam, rng, 8, 1);
      if (r1 == r2) continue;
      auto p = max_common_piece(r1, r2);
      auto q = max_common_piece(r2, r1);
      REQUIRE(p.has_value() == q.has_value());
      if (p) REQUIRE(p->word.length() == q->word.length());
    }
  }
}

TEST_CASE("verify_metric on the (ab)^7 presentation") {
  auto fam = c2c3();
  Word ab7 = parse_word_literal(fam, "(A.a B.b)^7");
  SECTION("rotation mode passes C'(1/6) with worst ratio 1/7") {
    SymmetrizedSet set = symmetrized_closure(fam, {ab7});
    PieceReport rep = verify_metric(set, {});
    REQUIRE(rep.pass);
    REQUIRE(rep.worst_ratio == Rational{1, 7});
    REQUIRE(rep.worst_piece_len == 2);
    REQUIRE(rep.worst_member_len == 14);
    REQUIRE(rep.length_gate_ok);
  }
  SECTION("full-conjugate mode sees the three-letter split piece") {
    SymmetrizedSet set =
        symmetrized_closure(fam, {ab7}, ClosureMode::full_conjugates);
    PieceReport rep = verify_metric(set, {});
    REQUIRE_FALSE(rep.pass);
    REQUIRE(rep.worst_ratio == Rational{3, 14});
    REQUIRE(rep.worst_piece_len == 3);
  }
  SECTION("full-conjugate mode passes for the longer power (ab)^10") {
    Word ab10 = parse_word_literal(fam, "(A.a B.b)^10");
    SymmetrizedSet set =
        symmetrized_closure(fam, {ab10}, ClosureMode::full_conjugates);
    PieceReport rep = verify_metric(set, {});
    REQUIRE(rep.pass);
    REQUIRE(rep.worst_ratio == Rational{3, 20});
  }
  SECTION("stricter lambda = 1/8 fails") {
    SymmetrizedSet set = symmetrized_closure(fam, {ab7});
    VerificationParams params;
    params.lambda = {1, 8};
    PieceReport rep = verify_metric(set, params);
    REQUIRE_FALSE(rep.pass);
    REQUIRE(rep.min_relator_length == 9);
    REQUIRE_FALSE(rep.violations.empty());
  }
}

TEST_CASE("length gate") {
  auto fam = c2c3();
  SymmetrizedSet set =
      symmetrized_closure(fam, {parse_word_literal(fam, "A.a")});
  PieceReport rep = verify_metric(set, {});
  REQUIRE_FALSE(rep.pass);
  REQUIRE_FALSE(rep.length_gate_ok);
  REQUIRE(rep.gate_failures.size() == 1);
  REQUIRE(rep.gate_failures[0].len == 1);
}

TEST_CASE("empty closure is an error") {
  SymmetrizedSet set;
  set.family = c2c3();
  REQUIRE_THROWS_AS(verify_metric(set, {}), ValidationError);
}

TEST_CASE("fast and materialized paths agree") {
  auto fam = c2c3();
  auto check_equal = [&](const SymmetrizedSet& set) {
    PieceReport fast = verify_metric(set, {});
    PieceReport slow = verify_metric_materialized(set, {});
    REQUIRE(report_signature(fast) == report_signature(slow));
  };
  SECTION("(ab)^7, both modes") {
    for (ClosureMode mode :
         {ClosureMode::rotations, ClosureMode::full_conjugates})
      check_equal(symmetrized_closure(
          fam, {parse_word_literal(fam, "(A.a B.b)^7")}, mode));
  }
  SECTION("mixed seed sets, both modes") {
    Word ab7 = parse_word_literal(fam, "(A.a B.b)^7");
    Word bab = parse_word_literal(fam, "B.b A.a B.b");
    Word misc = parse_word_literal(fam, "A.a B.b A.a B.b^2 A.a B.b");
    for (ClosureMode mode :
         {ClosureMode::rotations, ClosureMode::full_conjugates})
      check_equal(symmetrized_closure(fam, {ab7, bab, misc}, mode));
  }
  SECTION("split positions from a larger factor") {
    auto fam2 = make_family({cyclic_group_named("A", 2, "a"),
                             cyclic_group_named("B", 3, "b"),
                             alternating_group(5)});
    elem_t h = fam2->factor(2).require("(12)(34)");
    Word pow = normalize(
        fam2, std::vector<Letter>{{2, h}, {0, 1}, {2, h}, {0, 1}});
    Word mixed = parse_word_literal(
        fam2, "A5.(12345) A.a B.b A5.(123) B.b^2 A.a");
    for (ClosureMode mode :
         {ClosureMode::rotations, ClosureMode::full_conjugates})
      check_equal(symmetrized_closure(fam2, {pow, mixed}, mode));
  }
  SECTION("random seed sets, both modes") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 40; ++rep) {
      std::vector<Word> seeds;
      for (int k = 0; k < 2 + static_cast<int>(rng() % 2); ++k)
        seeds.push_back(rand_word(fam, rng, 10, 1));
      for (ClosureMode mode :
           {ClosureMode::rotations, ClosureMode::full_conjugates}) {
        SymmetrizedSet set = symmetrized_closure(fam, seeds, mode);
        check_equal(set);
      }
    }
  }
}

TEST_CASE("scan agrees with the definition-level piece oracle") {
  auto fam = c2c3();
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<Word> seeds{rand_word(fam, rng, 8, 2),
                            rand_word(fam, rng, 8, 2)};
    for (ClosureMode mode :
         {ClosureMode::rotations, ClosureMode::full_conjugates}) {
      SymmetrizedSet set = symmetrized_closure(fam, seeds, mode);
      auto members = materialize(set);
      // oracle: max piece over all distinct member pairs
      int oracle_best = 0;
      for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
          oracle_best = std::max(
              oracle_best, brute_piece_len(*fam, members[i], members[j]));
      PieceReport rep2 = verify_metric(set, {});
      REQUIRE(rep2.max_piece_len == oracle_best);
    }
  }
}

TEST_CASE("exactness of the reported rationals") {
  // 186/1655 must be stored reduced and compared by cross multiplication
  Rational r{186, 1655};
  REQUIRE(r.num == 186);
  REQUIRE(r.den == 1655);
  REQUIRE(r < Rational{1, 6});
  REQUIRE(Rational{372, 3310} == r);
  REQUIRE(Rational{90, 549} < Rational{1, 6});     // n = 22 squeaks through
  REQUIRE_FALSE(Rational{86, 503} < Rational{1, 6});  // n = 21 fails
}

TEST_CASE("theorem-a build at n = 5: fast equals materialized") {
  std::vector<FamilyMemberSpec> members{default_member(cyclic_group(2)),
                                        default_member(cyclic_group(3))};
  ConstructionParams params;
  params.n = 5;
  params.require_coprime6 = false;
  Presentation pres = build_theorem_a(members, params);
  REQUIRE(total_cyclic_letters(pres.symmetrized) <= 2000);
  PieceReport fast = verify_metric(pres.symmetrized, {}, pres.labels());
  PieceReport slow =
      verify_metric_materialized(pres.symmetrized, {}, pres.labels());
  REQUIRE(report_signature(fast) == report_signature(slow));
  REQUIRE_FALSE(fast.pass);  // n = 5 is far below the threshold
}
