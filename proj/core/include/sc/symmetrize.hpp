#pragma once

#include <cstdint>
#include <vector>

#include "sc/freeprod.hpp"

namespace sc {

// How conjugate representatives are enumerated.
//
// `rotations` closes each seed under inversion, cyclic permutation (merging a
// same-factor boundary pair when the rotation makes one), and conjugation by
// the shared boundary factor when the first and last letters lie in one
// factor. This keeps closures rotation-sized and is the operative mode.
//
// `full_conjugates` additionally admits, at every position of the cyclic
// word, the length+1 representatives that split a letter across the word
// boundary; this is the closure a brute-force conjugation search produces.
enum class ClosureMode { rotations, full_conjugates };

struct SeedRef {
  int seed = 0;
  bool inverted = false;
};

// One conjugacy orbit of the closure. `letters` is the cyclic word in its
// lexicographically least rotation; rotations at offsets [0, period) are the
// distinct cyclic-permutation members. Each split position q contributes the
// length+1 members (c * C[q]) C[q+1] ... C[q-1] (c^-1) for c in the factor of
// C[q] minus {1, C[q]^-1}. Single-letter orbits store the least element of
// the factor conjugacy class, which is the member set.
struct CyclicClass {
  std::vector<Letter> letters;
  std::uint32_t period = 0;
  std::vector<std::uint32_t> split_positions;  // sorted, within [0, period)
  std::vector<SeedRef> refs;

  std::size_t cyclic_length() const { return letters.size(); }
};

struct SymmetrizedSet {
  FamilyPtr family;
  std::vector<Word> seeds;  // weakly cyclically reduced, in input order
  std::vector<CyclicClass> classes;
  ClosureMode mode = ClosureMode::rotations;
};

// The least symmetrized superset of the seeds under `mode`. Seeds are
// preprocessed with weakly_cyclic_reduce; a seed reducing to the empty word
// is rejected.
SymmetrizedSet symmetrized_closure(FamilyPtr family, std::vector<Word> seeds,
                                   ClosureMode mode = ClosureMode::rotations);

bool contains(const SymmetrizedSet& set, const Word& w);

// Every member as an explicit word, sorted and deduplicated.
std::vector<Word> materialize(const SymmetrizedSet& set);

std::size_t member_count(const SymmetrizedSet& set);
// Sum of cyclic lengths across classes; the size measure for slow-path guards.
std::size_t total_cyclic_letters(const SymmetrizedSet& set);

// Classes of the given weakly cyclically reduced words, without the
// inversion closure; duplicates merge. Used for piece queries over explicit
// word pairs.
std::vector<CyclicClass> classes_for_words(const FactorFamily& fam,
                                           const std::vector<Word>& words,
                                           ClosureMode mode);

// Index of the lexicographically least rotation of a cyclic sequence.
std::size_t least_rotation_index(const std::vector<std::uint32_t>& ids);
// Smallest p dividing ids.size() with rotation-by-p invariance.
std::size_t primitive_period(const std::vector<std::uint32_t>& ids);

// The explicit member word of a class rotation / split variant.
Word rotation_word(const SymmetrizedSet& set, const CyclicClass& c,
                   std::size_t offset);
Word split_word(const SymmetrizedSet& set, const CyclicClass& c,
                std::size_t position, elem_t conjugator);

}  // namespace sc
