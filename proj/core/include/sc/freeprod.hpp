#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sc/group.hpp"

namespace sc {

// The ordered factor list of a free product. Words reference their family
// through a shared pointer; operations on words from different families are
// rejected at runtime.
struct FactorFamily {
  std::vector<GroupTable> factors;

  int count() const { return static_cast<int>(factors.size()); }
  const GroupTable& factor(int i) const { return factors.at(i); }
  int index_of(const std::string& name) const;
  int require(const std::string& name) const;

  void validate() const;  // unique ids, every factor of order >= 2
};

using FamilyPtr = std::shared_ptr<const FactorFamily>;

FamilyPtr make_family(std::vector<GroupTable> factors);

// One symbol of the alphabet: a nonidentity element of one factor.
struct Letter {
  std::uint16_t factor = 0;
  elem_t elem = 0;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline std::uint32_t letter_id(Letter l) {
  return (static_cast<std::uint32_t>(l.factor) << 16) | l.elem;
}
inline std::uint16_t id_factor(std::uint32_t id) {
  return static_cast<std::uint16_t>(id >> 16);
}

// A free-product element in normal form: adjacent letters lie in distinct
// factors, no identity letters. The empty word is the identity.
struct Word {
  FamilyPtr family;
  std::vector<Letter> letters;

  std::size_t length() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  friend bool operator==(const Word& a, const Word& b) {
    return a.letters == b.letters;
  }
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return a.letters <=> b.letters;
  }
};

bool same_family(const Word& a, const Word& b);
void require_same_family(const Word& a, const Word& b);

// Stack pass: merges same-factor neighbours via the tables, drops identity
// letters, yields the unique normal form.
Word normalize(FamilyPtr family, std::span<const Letter> raw);
Word make_word(FamilyPtr family, std::initializer_list<Letter> raw);

Word multiply(const Word& u, const Word& v);
Word invert(const Word& u);
Word word_pow(const Word& u, long k);

bool is_reduced(const FactorFamily& fam, std::span<const Letter> letters);

// length <= 1, or the first and last letters do not cancel (they may share
// a factor).
bool is_weakly_cyclically_reduced(const Word& u);

// Returns (v, conj) with v weakly cyclically reduced and v = conj * u * conj^-1.
std::pair<Word, Word> weakly_cyclic_reduce(const Word& u);

// Word literal grammar: whitespace-separated `factor.elem` tokens with an
// optional trailing ^k (k any integer), and parenthesised groups with
// exponents, e.g. `(A.a B.b)^23 A.a B.b^2`. Element names may themselves
// contain balanced parentheses (cycle notation) and carets; a trailing ^k is
// read as an exponent only when k parses as an integer.
Word parse_word_literal(FamilyPtr family, const std::string& text);
// Serialisation is the plain letter-by-letter token list; it round-trips
// bit-exactly through parse_word_literal.
std::string to_literal(const Word& w);
std::string letter_token(const FactorFamily& fam, Letter l);

}  // namespace sc
