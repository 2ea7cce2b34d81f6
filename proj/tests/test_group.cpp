#include <catch2/catch_amalgamated.hpp>

#include "sc/group.hpp"

using namespace sc;

TEST_CASE("cyclic groups") {
  SECTION("trivial group") {
    GroupTable g = cyclic_group(1);
    REQUIRE(g.order() == 1);
    g.validate();
  }
  SECTION("order 2, g*g = e") {
    GroupTable g = cyclic_group(2);
    REQUIRE(g.order() == 2);
    REQUIRE(g.prod(1, 1) == 0);
    g.validate();
  }
  SECTION("order 6 is not simple") {
    GroupTable g = cyclic_group(6);
    REQUIRE(g.order() == 6);
    REQUIRE_FALSE(is_simple(g));
  }
  SECTION("zero order rejected") {
    REQUIRE_THROWS_AS(cyclic_group(0), ValidationError);
  }
  SECTION("custom generator letter") {
    GroupTable b = cyclic_group_named("B", 3, "b");
    REQUIRE(b.elements == std::vector<std::string>{"e", "b", "b^2"});
  }
}

TEST_CASE("alternating groups") {
  SECTION("A3 is cyclic of order 3") {
    GroupTable g = alternating_group(3);
    REQUIRE(g.order() == 3);
    g.validate();
  }
  SECTION("A4 has order 12 and is not simple") {
    GroupTable g = alternating_group(4);
    REQUIRE(g.order() == 12);
    g.validate();
    REQUIRE_FALSE(is_simple(g));
  }
  SECTION("A5 has order 60 and is simple") {
    GroupTable g = alternating_group(5);
    REQUIRE(g.order() == 60);
    g.validate();
    REQUIRE(is_simple(g));
  }
  SECTION("out of range") {
    REQUIRE_THROWS_AS(alternating_group(2), ValidationError);
    REQUIRE_THROWS_AS(alternating_group(7), ValidationError);
  }
  SECTION("cycle names resolve") {
    GroupTable g = alternating_group(5);
    REQUIRE(g.elements[0] == "e");
    REQUIRE(g.index_of("(12345)").has_value());
    REQUIRE(g.index_of("(12)(34)").has_value());
  }
}

TEST_CASE("is_simple on cyclic groups") {
  REQUIRE(is_simple(cyclic_group(5)));
  REQUIRE_FALSE(is_simple(cyclic_group(4)));
  REQUIRE_FALSE(is_simple(cyclic_group(1)));
}

TEST_CASE("subgroup generation") {
  SECTION("index-2 subgroup of C6") {
    GroupTable g = cyclic_group(6);
    auto sub = subgroup_generated(g, {2});
    REQUIRE(sub == std::vector<elem_t>{0, 2, 4});
  }
  SECTION("identity generates the trivial subgroup") {
    GroupTable g = cyclic_group(6);
    REQUIRE(subgroup_generated(g, {0}) == std::vector<elem_t>{0});
  }
  SECTION("a validated generating pair for A5 exists") {
    GroupTable g = alternating_group(5);
    auto [s, t] = first_generating_pair(g);
    auto sub = subgroup_generated(g, {s, t});
    REQUIRE(static_cast<int>(sub.size()) == 60);
  }
  SECTION("monotone and idempotent") {
    GroupTable g = alternating_group(4);
    auto small = subgroup_generated(g, {1});
    auto big = subgroup_generated(g, {1, 2});
    for (elem_t e : small) REQUIRE(std::count(big.begin(), big.end(), e) == 1);
    auto again = subgroup_generated(g, small);
    REQUIRE(again == small);
  }
  SECTION("unknown element") {
    GroupTable g = cyclic_group(3);
    REQUIRE_THROWS_AS(subgroup_generated(g, {static_cast<elem_t>(9)}),
                      ValidationError);
  }
}

TEST_CASE("normal closure characterizes simplicity") {
  GroupTable g = alternating_group(5);
  for (elem_t x = 1; x < g.order(); ++x)
    REQUIRE(normal_closure(g, x).size() == 60);
  GroupTable a4 = alternating_group(4);
  // the Klein subgroup shows up as a proper normal closure
  bool found_proper = false;
  for (elem_t x = 1; x < a4.order(); ++x) {
    auto nc = normal_closure(a4, x);
    if (nc.size() == 4) found_proper = true;
    // closures are normal subgroups: conjugation-stable
    for (elem_t e : nc)
      for (elem_t y = 0; y < a4.order(); ++y) {
        elem_t c = a4.prod(a4.prod(y, e), a4.inverse(y));
        REQUIRE(std::binary_search(nc.begin(), nc.end(), c));
      }
  }
  REQUIRE(found_proper);
}

TEST_CASE("homomorphism validation") {
  SECTION("identity map") {
    GroupTable g = cyclic_group(3);
    Homomorphism h{g, g, {0, 1, 2}};
    HomReport rep = validate_homomorphism(h);
    REQUIRE(rep.is_hom);
    REQUIRE(rep.is_injective);
  }
  SECTION("C2 into A5 via an involution") {
    GroupTable c2 = cyclic_group(2);
    GroupTable a5 = alternating_group(5);
    elem_t inv = a5.require("(12)(34)");
    Homomorphism h{c2, a5, {0, inv}};
    HomReport rep = validate_homomorphism(h);
    REQUIRE(rep.is_hom);
    REQUIRE(rep.is_injective);
  }
  SECTION("order obstruction C4 -> C2") {
    GroupTable c4 = cyclic_group(4);
    GroupTable c2 = cyclic_group(2);
    Homomorphism h{c4, c2, {0, 1, 0, 1}};
    HomReport rep = validate_homomorphism(h);
    REQUIRE(rep.is_hom);  // this one is the quotient map, a real hom
    REQUIRE_FALSE(rep.is_injective);
    // g -> g with g^2 -> g is not a hom
    Homomorphism bad{c4, c2, {0, 1, 1, 0}};
    HomReport rep2 = validate_homomorphism(bad);
    REQUIRE_FALSE(rep2.is_hom);
    REQUIRE_FALSE(rep2.is_injective);
  }
  SECTION("identity maps validate on every table") {
    for (const GroupTable& g :
         {cyclic_group(2), cyclic_group(5), alternating_group(4)}) {
      std::vector<elem_t> id(g.order());
      for (int i = 0; i < g.order(); ++i) id[i] = static_cast<elem_t>(i);
      HomReport rep = validate_homomorphism({g, g, id});
      REQUIRE(rep.is_hom);
      REQUIRE(rep.is_injective);
    }
  }
}

TEST_CASE("simple factor specs") {
  GroupTable a5 = alternating_group(5);
  auto [s, t] = first_generating_pair(a5);
  SimpleFactorSpec spec{a5, s, t};
  REQUIRE_NOTHROW(spec.validate());

  SECTION("non-simple host rejected") {
    GroupTable c6 = cyclic_group(6);
    SimpleFactorSpec bad{c6, 1, 2};
    REQUIRE_THROWS_WITH(bad.validate(),
                        Catch::Matchers::ContainsSubstring("not simple"));
  }
  SECTION("non-generating pair rejected") {
    // two powers of one 5-cycle generate only C5
    elem_t c = a5.require("(12345)");
    SimpleFactorSpec bad{a5, c, a5.prod(c, c)};
    REQUIRE_THROWS_AS(bad.validate(), ValidationError);
  }
}

TEST_CASE("table validation catches broken input") {
  GroupTable g = cyclic_group(3);
  SECTION("identity not at index 0") {
    std::swap(g.elements[0], g.elements[1]);
    // table now inconsistent with names; rebuild a broken mul
    GroupTable bad = g;
    bad.mul[0] = 1;
    REQUIRE_THROWS_AS(bad.validate(), ValidationError);
  }
  SECTION("duplicate names") {
    GroupTable bad = g;
    bad.elements[2] = bad.elements[1];
    REQUIRE_THROWS_AS(bad.validate(), ValidationError);
  }
}
