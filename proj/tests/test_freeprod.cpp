#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sc/freeprod.hpp"

using namespace sc;

namespace {

FamilyPtr c2c3() {
  return make_family({cyclic_group_named("A", 2, "a"),
                      cyclic_group_named("B", 3, "b")});
}

Word rand_word(const FamilyPtr& fam, std::mt19937_64& rng, int max_len) {
  std::vector<Letter> raw;
  int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    std::uint16_t f = static_cast<std::uint16_t>(rng() % fam->count());
    elem_t e = static_cast<elem_t>(rng() % fam->factor(f).order());
    raw.push_back({f, e});  // identity letters exercise absorption
  }
  return normalize(fam, raw);
}

}  // namespace

TEST_CASE("normalization") {
  auto fam = c2c3();
  const Letter a{0, 1}, b{1, 1}, b2{1, 2};
  SECTION("a*a cancels") {
    REQUIRE(make_word(fam, {a, a}).empty());
  }
  SECTION("a b b^-1 a cancels fully") {
    REQUIRE(make_word(fam, {a, b, b2, a}).empty());
  }
  SECTION("b*b merges to b^2") {
    Word w = make_word(fam, {b, b});
    REQUIRE(w.length() == 1);
    REQUIRE(w.letters[0] == b2);
  }
  SECTION("identity letters are absorbed") {
    Word w = make_word(fam, {a, Letter{1, 0}, b});
    REQUIRE(w.length() == 2);
  }
  SECTION("unknown factor rejected") {
    REQUIRE_THROWS_AS(make_word(fam, {Letter{7, 1}}), ValidationError);
  }
  SECTION("unknown element rejected") {
    REQUIRE_THROWS_AS(make_word(fam, {Letter{0, 5}}), ValidationError);
  }
}

TEST_CASE("multiply and invert") {
  auto fam = c2c3();
  Word ab = parse_word_literal(fam, "A.a B.b");
  SECTION("u * u^-1 = 1") {
    REQUIRE(multiply(ab, invert(ab)).empty());
  }
  SECTION("(ab)^-1 = b^2 a") {
    REQUIRE(to_literal(invert(ab)) == "B.b^2 A.a");
  }
  SECTION("power lengths add") {
    for (int n : {1, 2, 5}) {
      for (int m : {1, 3}) {
        Word lhs = multiply(word_pow(ab, n), word_pow(ab, m));
        REQUIRE(lhs.length() == static_cast<std::size_t>(2 * (n + m)));
        REQUIRE(lhs == word_pow(ab, n + m));
      }
    }
  }
  SECTION("mixed families rejected") {
    auto other = c2c3();
    Word w2 = parse_word_literal(other, "A.a");
    REQUIRE_THROWS_AS(multiply(ab, w2), ValidationError);
  }
}

TEST_CASE("weak cyclic reducedness") {
  auto fam = c2c3();
  SECTION("b a b is weakly cyclically reduced") {
    REQUIRE(is_weakly_cyclically_reduced(parse_word_literal(fam, "B.b A.a B.b")));
  }
  SECTION("b a b^2 is not") {
    REQUIRE_FALSE(
        is_weakly_cyclically_reduced(parse_word_literal(fam, "B.b A.a B.b^2")));
  }
  SECTION("single letters and the empty word are") {
    REQUIRE(is_weakly_cyclically_reduced(parse_word_literal(fam, "A.a")));
    REQUIRE(is_weakly_cyclically_reduced(Word{fam, {}}));
  }
}

TEST_CASE("weakly_cyclic_reduce") {
  auto fam = c2c3();
  SECTION("b a b^2 reduces to a with conjugator b^-1") {
    Word w = parse_word_literal(fam, "B.b A.a B.b^2");
    auto [red, conj] = weakly_cyclic_reduce(w);
    REQUIRE(to_literal(red) == "A.a");
    REQUIRE(to_literal(conj) == "B.b^2");  // b^-1
    // v = conj * u * conj^-1
    REQUIRE(multiply(multiply(conj, w), invert(conj)) == red);
  }
  SECTION("already reduced words return themselves") {
    Word w = parse_word_literal(fam, "B.b A.a B.b");
    auto [red, conj] = weakly_cyclic_reduce(w);
    REQUIRE(red == w);
    REQUIRE(conj.empty());
  }
  SECTION("empty word") {
    auto [red, conj] = weakly_cyclic_reduce(Word{fam, {}});
    REQUIRE(red.empty());
    REQUIRE(conj.empty());
  }
  SECTION("conjugation round-trip on random words") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 300; ++rep) {
      Word w = rand_word(fam, rng, 12);
      auto [red, conj] = weakly_cyclic_reduce(w);
      REQUIRE(is_weakly_cyclically_reduced(red));
      REQUIRE(multiply(multiply(conj, w), invert(conj)) == red);
    }
  }
}

TEST_CASE("word algebra properties") {
  auto fam = make_family({cyclic_group_named("A", 2, "a"),
                          cyclic_group_named("B", 3, "b"),
                          alternating_group(4)});
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 500; ++rep) {
    Word u = rand_word(fam, rng, 10);
    Word v = rand_word(fam, rng, 10);
    Word w = rand_word(fam, rng, 10);
    // associativity of the induced product
    REQUIRE(multiply(multiply(u, v), w) == multiply(u, multiply(v, w)));
    // subadditivity and inversion
    REQUIRE(multiply(u, v).length() <= u.length() + v.length());
    REQUIRE(invert(u).length() == u.length());
    REQUIRE(invert(invert(u)) == u);
    REQUIRE(multiply(u, invert(u)).empty());
    // idempotence of normalization
    REQUIRE(normalize(fam, u.letters) == u);
  }
}

TEST_CASE("word literal grammar") {
  auto fam = make_family({cyclic_group_named("A", 2, "a"),
                          cyclic_group_named("B", 3, "b"),
                          alternating_group(5)});
  SECTION("tokens with exponents") {
    REQUIRE(parse_word_literal(fam, "B.b^2") ==
            parse_word_literal(fam, "B.b B.b"));
    REQUIRE(parse_word_literal(fam, "B.b^-1") ==
            parse_word_literal(fam, "B.b^2"));
    REQUIRE(parse_word_literal(fam, "B.b^3").empty());
  }
  SECTION("groups with exponents") {
    Word w = parse_word_literal(fam, "(A.a B.b)^23");
    REQUIRE(w.length() == 46);
    REQUIRE(parse_word_literal(fam, "(A.a B.b)^-1") ==
            parse_word_literal(fam, "B.b^2 A.a"));
    REQUIRE(parse_word_literal(fam, "( A.a ( B.b )^2 )^0").empty());
  }
  SECTION("cycle-notation element names") {
    Word w = parse_word_literal(fam, "A5.(12)(34) A.a A5.(12345)^-1");
    REQUIRE(w.length() == 3);
    REQUIRE(w.letters[2].elem ==
            fam->factor(2).inverse(fam->factor(2).require("(12345)")));
  }
  SECTION("round trip is bit-exact") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 200; ++rep) {
      Word w = rand_word(fam, rng, 20);
      REQUIRE(parse_word_literal(fam, to_literal(w)) == w);
    }
  }
  SECTION("errors carry positions") {
    REQUIRE_THROWS_AS(parse_word_literal(fam, "A.a ) B.b"), ParseError);
    REQUIRE_THROWS_AS(parse_word_literal(fam, "( A.a"), ParseError);
    REQUIRE_THROWS_AS(parse_word_literal(fam, "Q.x"), ParseError);
    REQUIRE_THROWS_AS(parse_word_literal(fam, "A.z"), ParseError);
    REQUIRE_THROWS_AS(parse_word_literal(fam, "A.a^x"), ParseError);
  }
}

TEST_CASE("factor family validation") {
  REQUIRE_THROWS_AS(make_family({cyclic_group(1)}), ValidationError);
  REQUIRE_THROWS_AS(make_family({cyclic_group(2), cyclic_group(2)}),
                    ValidationError);  // duplicate ids
  REQUIRE_THROWS_AS(make_family({}), ValidationError);
}
