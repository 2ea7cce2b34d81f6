#pragma once

#include <string>
#include <vector>

#include "sc/construct.hpp"

namespace sc {

struct TraceStep {
  enum class Kind { cyclic_cancel, cyclic_merge, relator_sub };
  Kind kind = Kind::relator_sub;
  int rotation = 0;       // rotation applied first, exposing the match at 0
  int class_index = -1;   // closure class used (relator_sub)
  int class_offset = 0;   // rotation offset of the matched member
  int match_len = 0;
  long result_len = 0;
  std::string relator;    // label of the relator class used
};

struct ReductionTrace {
  Word initial;
  Word final_word;
  std::vector<TraceStep> steps;
};

struct EmbeddingRow {
  std::string factor;
  std::string element;
  bool ok = false;
};
struct EmbeddingReport {
  bool pass = false;
  std::vector<EmbeddingRow> rows;
};

struct GenerationRow {
  std::string generator;  // letter token
  std::string relator;    // relator supplying the expression
  long expression_len = 0;
  bool verified = false;
};
struct GenerationReport {
  bool pass = false;
  std::vector<GenerationRow> rows;
  std::vector<std::string> unexpressed;
};

// Dehn's algorithm over a verified C'(1/6) presentation. Construction runs
// the metric verification and refuses unverifiable presentations, since the
// correctness of the procedure rests on the metric condition.
class DehnSolver {
 public:
  explicit DehnSolver(Presentation pres, VerificationParams params = {});

  const Presentation& presentation() const { return pres_; }
  const PieceReport& certificate() const { return cert_; }

  // Cyclically reduces and greedily replaces any cyclic subword matching
  // more than half of a closure relator until no such subword remains. The
  // input is trivial in the presented group iff the result is empty.
  std::pair<Word, ReductionTrace> reduce(const Word& w) const;
  bool is_trivial(const Word& w) const;

  // Every nonidentity letter of every factor must be Dehn-irreducible; this
  // also separates distinct factor elements, whose quotients are again
  // nonidentity letters.
  EmbeddingReport check_factor_embedding() const;

  // Expresses each designated generator outside the target factors from a
  // seed relator that contains it exactly once as its terminal letter, and
  // verifies the expression with the solver; factors become available
  // transitively as their generators are expressed.
  GenerationReport check_generation(const std::vector<int>& targets) const;

 private:
  Presentation pres_;
  PieceReport cert_;
};

// Replays a trace from its initial word; tests compare the result with the
// recorded final word bit-exactly.
Word replay_trace(const Presentation& pres, const ReductionTrace& trace);

std::string render_trace(const ReductionTrace& trace);

enum class OracleVerdict { trivial, unknown };

// Breadth-first enumeration of short normal-closure elements: words reachable
// as products of conjugated relators, kept while their length stays within
// max_len. Sound but incomplete; it never declares a word nontrivial.
class NormalClosureOracle {
 public:
  NormalClosureOracle(const Presentation& pres, int max_len,
                      std::size_t max_closure_letters = 500);
  OracleVerdict is_trivial(const Word& w) const;
  std::size_t reachable_count() const { return reached_.size(); }

 private:
  std::vector<Word> reached_;  // sorted
};

OracleVerdict oracle_is_trivial(const Presentation& pres, const Word& w,
                                int max_len);

}  // namespace sc
