#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sc/rational.hpp"
#include "sc/symmetrize.hpp"

namespace sc {

struct VerificationParams {
  Rational lambda{1, 6};
  // Relators must be strictly longer than 1/lambda; 0 derives the bound from
  // lambda (7 for 1/6).
  int min_relator_length = 0;
  bool early_exit = false;  // stop at the first violation (min-n searches)
  int jobs = 1;

  int effective_min_length() const {
    if (min_relator_length > 0) return min_relator_length;
    // smallest integer > lambda.den / lambda.num
    return static_cast<int>(lambda.den / lambda.num) + 1;
  }
};

// A maximal common piece between two closure members.
struct Piece {
  Word word;
  Word relator_1;
  Word relator_2;
  bool split_tail = false;  // last letter is a proper divisor on some side
};

struct GateRow {
  std::string relator;
  long len = 0;
};

struct ReportRow {
  std::string label;
  long relator_len = 0;  // seed word length
  long piece_len = 0;    // piece achieving the worst ratio for this relator
  long member_len = 0;   // closure-member length in that ratio
  Rational ratio{0, 1};
  bool ok = true;
  std::string partner;  // relator on the other side of the worst pair
  std::string piece_literal;
};

struct ViolationRow {
  std::string relator;
  std::string partner;
  long piece_len = 0;
  long member_len = 0;
  Rational ratio{0, 1};
  std::string piece_literal;
};

struct PieceReport {
  bool pass = false;
  Rational lambda{1, 6};
  int min_relator_length = 7;
  bool length_gate_ok = true;
  std::vector<GateRow> gate_failures;

  Rational worst_ratio{0, 1};
  long worst_piece_len = 0;
  long worst_member_len = 0;
  long max_piece_len = 0;  // longest piece regardless of ratio
  std::string worst_relator;
  std::string worst_partner;
  std::string witness_piece;
  std::string witness_relator_word;
  std::string witness_partner_word;

  std::vector<ReportRow> rows;  // one per seed, in seed order
  std::vector<ViolationRow> violations;

  std::size_t class_count = 0;
  std::size_t member_count = 0;
  bool early_exited = false;
  std::string path;  // "rotation-scan" or "materialized"
};

// Exact C'(lambda) verification via the pairwise rotation scan over the
// closure's cyclic classes. Labels name the seeds in report rows; when empty,
// seeds are labelled r0, r1, ...
PieceReport verify_metric(const SymmetrizedSet& set,
                          const VerificationParams& params,
                          const std::vector<std::string>& labels = {});

// Same report computed from the fully materialised member list by pairwise
// longest-common-semi-reduced-prefix; guarded by a closure size limit.
PieceReport verify_metric_materialized(
    const SymmetrizedSet& set, const VerificationParams& params,
    const std::vector<std::string>& labels = {},
    std::size_t max_cyclic_letters = 2000);

// Everything except the path marker, for exact cross-path comparison.
std::string report_signature(const PieceReport& r);

// The longest piece shared by the cyclic families of r1 and r2 (rotations
// and, in full mode, boundary splits of the two words; inverses are not
// taken). none when no common piece exists. Identical inputs are an error.
std::optional<Piece> max_common_piece(const Word& r1, const Word& r2,
                                      ClosureMode mode = ClosureMode::rotations);

}  // namespace sc
