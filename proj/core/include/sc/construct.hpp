#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sc/cancellation.hpp"
#include "sc/freeprod.hpp"
#include "sc/symmetrize.hpp"

namespace sc {

enum class RelTag { u, v, w_a, w_b, pow_a, pow_b, u_ij, w_a_B, w_bj_B, generic };

std::string tag_name(RelTag t);
std::optional<RelTag> tag_from_name(const std::string& s);

struct TaggedRelator {
  RelTag tag = RelTag::generic;
  int i = -1;
  int j = -1;
  int k = -1;
  Word word;

  std::string label() const;
};

// One family member H_i with its simple host, the embedding H_i -> S_i, and
// the chosen elements the relators use.
struct FamilyMemberSpec {
  GroupTable group;      // H_i
  SimpleFactorSpec host; // S_i with its designated generating pair
  std::vector<elem_t> embedding;  // image map, one host element per H_i element
  elem_t h = 0;
  std::optional<elem_t> h_bar;

  // Uniform-family construction extras: a J-indexed host generating system
  // and, for maximal-order members, the per-index element choices.
  std::vector<elem_t> host_gens_j;
  std::vector<elem_t> h_j, h_bar_j;

  // Common validation; index-dependent rules live in the builders.
  void validate_basic(int index) const;
  elem_t embedded(elem_t x) const { return embedding.at(x); }
};

struct ConstructionParams {
  int n = 23;
  bool require_coprime6 = true;
  ClosureMode closure = ClosureMode::rotations;
};

struct Presentation {
  FamilyPtr family;
  std::vector<TaggedRelator> seeds;
  SymmetrizedSet symmetrized;
  int n = 0;
  char theorem = 'a';  // 'a', 'b', or 'r' for raw seed files
  ClosureMode closure = ClosureMode::rotations;
  // Designated generator letters per factor (element indices): what the
  // generation check treats as the generators of each factor.
  std::vector<std::vector<elem_t>> factor_gens;

  std::vector<std::string> labels() const;
};

// The two-generator family construction. Members are indexed in order; an
// order-2 member group is legal only at index 0.
Presentation build_theorem_a(const std::vector<FamilyMemberSpec>& members,
                             const ConstructionParams& params);

// Finite truncation of the uniform-family construction. j_trunc indexes the
// emitted u / w_b / power relators; j_total is the number of order-3 factors
// the letter alphabet carries (defaults to j_trunc). The index map
// alpha(i, j) = i * j_trunc + j must be injective into [0, j_total), which
// requires j_total >= |I| * j_trunc.
struct TheoremBSpec {
  std::vector<FamilyMemberSpec> family;
  int j_trunc = 1;
  int j_total = 0;  // 0 = j_trunc
  std::vector<std::pair<int, int>> pairs_L;  // empty = derive default
};

Presentation build_theorem_b(const TheoremBSpec& spec,
                             const ConstructionParams& params);

// The family skeleton [C_2, g, C_3, C_3, C_4, C_4, ...] up to max_order.
struct CorollarySkeleton {
  std::vector<GroupTable> groups;
  bool c2_collision = false;  // g itself has order 2
};
CorollarySkeleton corollary_a_family(const GroupTable& g, int max_order);

// Closed-form relator lengths.
long predicted_length(RelTag tag, long n, long i);
struct LengthRow {
  std::string label;
  long predicted = 0;
  long measured = 0;
};
std::vector<LengthRow> predicted_lengths(const Presentation& pres);

// Least n in [1, max_n] whose build passes C'(lambda); gcd(n, 6) = 1 is
// imposed only when coprime6 is set. Throws VerificationError when no n in
// range passes.
int find_min_n(const std::vector<FamilyMemberSpec>& members,
               const VerificationParams& vparams, bool coprime6,
               int max_n = 64);

// Worst piece ratio per index i for one relator family, extracted from a
// verification report of the presentation.
std::vector<std::pair<int, Rational>> ratio_scan(const Presentation& pres,
                                                 const PieceReport& report,
                                                 RelTag tag, int lo, int hi);
std::vector<std::pair<int, Rational>> ratio_scan(const Presentation& pres,
                                                 RelTag tag, int lo, int hi,
                                                 const VerificationParams& p = {});

// Default member specs over A_5 hosts for desk-scale families.
FamilyMemberSpec default_member(const GroupTable& group);

}  // namespace sc
