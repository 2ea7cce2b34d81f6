#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sc/error.hpp"

namespace sc {

using elem_t = std::uint16_t;

// A finite group given extensionally by its multiplication table.
// Index 0 is always the identity; validate() checks the full group axioms
// (the order cap keeps the associativity triple loop cheap).
struct GroupTable {
  std::string name;
  std::vector<std::string> elements;
  std::vector<elem_t> mul;  // row-major: mul[a * order + b] = a * b
  std::vector<elem_t> inv;

  static constexpr int kMaxOrder = 400;

  int order() const { return static_cast<int>(elements.size()); }
  elem_t prod(elem_t a, elem_t b) const { return mul[a * elements.size() + b]; }
  elem_t inverse(elem_t a) const { return inv[a]; }

  int elem_order(elem_t a) const {
    int k = 1;
    elem_t x = a;
    while (x != 0) {
      x = prod(x, a);
      ++k;
    }
    return k;
  }

  std::optional<elem_t> index_of(const std::string& elem_name) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i] == elem_name) return static_cast<elem_t>(i);
    return std::nullopt;
  }
  elem_t require(const std::string& elem_name) const;

  void validate() const;  // throws ValidationError
};

GroupTable cyclic_group(int m);  // elements e, g, g^2, ...
// Same group with a custom generator letter, e.g. ("A", 2, "a") -> e, a.
GroupTable cyclic_group_named(const std::string& name, int m,
                              const std::string& gen_letter);
GroupTable alternating_group(int k);  // 3 <= k <= 6, cycle-notation names

// Smallest normal subgroup containing x, as a sorted element list.
std::vector<elem_t> normal_closure(const GroupTable& g, elem_t x);
// Closure of gens under products (inverses come for free in a finite group).
std::vector<elem_t> subgroup_generated(const GroupTable& g,
                                       const std::vector<elem_t>& gens);
std::vector<elem_t> conjugacy_class(const GroupTable& g, elem_t x);

// true iff every nonidentity element normally generates the whole group;
// the trivial group is not simple.
bool is_simple(const GroupTable& g);

struct Homomorphism {
  GroupTable source;
  GroupTable target;
  std::vector<elem_t> image;  // image[x] in target, one entry per source elem
};

struct HomReport {
  bool is_hom = false;
  bool is_injective = false;
  std::string detail;
};

HomReport validate_homomorphism(const Homomorphism& h);

// A finite simple group together with a designated generating pair; the
// stand-in for the 2-generated simple hosts of the construction.
struct SimpleFactorSpec {
  GroupTable group;
  elem_t gen_s = 0;
  elem_t gen_t = 0;

  void validate() const;  // simplicity and <gen_s, gen_t> = group
};

// First (s, t) in index order with <s, t> the whole group, for default specs.
std::pair<elem_t, elem_t> first_generating_pair(const GroupTable& g);

}  // namespace sc
