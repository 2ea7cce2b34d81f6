#include "sc/report.hpp"

#include <sstream>

#include "json.hpp"

namespace sc {

using nlohmann::json;

std::string render_report_text(const PieceReport& rep) {
  std::ostringstream out;
  out << "metric verification (" << rep.path << ")\n";
  out << "  lambda: " << rep.lambda.str() << "\n";
  out << "  min relator length: > " << rep.min_relator_length - 1 << "\n";
  out << "  classes: " << rep.class_count
      << ", members: " << rep.member_count << "\n";
  if (!rep.length_gate_ok) {
    out << "  length gate failures:\n";
    for (const GateRow& g : rep.gate_failures)
      out << "    " << g.relator << " has cyclic length " << g.len << "\n";
  }
  if (rep.worst_piece_len > 0) {
    out << "  worst ratio: " << rep.worst_ratio.str() << " (piece "
        << rep.worst_piece_len << " in relator " << rep.worst_relator
        << " of member length " << rep.worst_member_len << ", paired with "
        << rep.worst_partner << ")\n";
    out << "  witness piece: " << rep.witness_piece << "\n";
    out << "  witness relator: " << rep.witness_relator_word << "\n";
    out << "  witness partner: " << rep.witness_partner_word << "\n";
  }
  out << "  per-relator worst pieces:\n";
  for (const ReportRow& r : rep.rows) {
    out << "    " << r.label << ": len " << r.relator_len << ", piece "
        << r.piece_len << "/" << r.member_len << " = " << r.ratio.str()
        << (r.ok ? "" : "  VIOLATION") << " (vs " << r.partner << ")\n";
  }
  if (!rep.violations.empty()) {
    out << "  violations:\n";
    for (const ViolationRow& v : rep.violations)
      out << "    piece of length " << v.piece_len << " in " << v.relator
          << " (member length " << v.member_len << ", ratio " << v.ratio.str()
          << ", vs " << v.partner << "): " << v.piece_literal << "\n";
  }
  if (rep.early_exited) out << "  (early exit after first violation)\n";
  out << "result: " << (rep.pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string report_json(const PieceReport& rep) {
  json j;
  j["pass"] = rep.pass;
  j["path"] = rep.path;
  j["lambda"] = rep.lambda.str();
  j["min_relator_length"] = rep.min_relator_length;
  j["length_gate_ok"] = rep.length_gate_ok;
  j["classes"] = rep.class_count;
  j["members"] = rep.member_count;
  j["early_exited"] = rep.early_exited;
  j["gate_failures"] = json::array();
  for (const GateRow& g : rep.gate_failures)
    j["gate_failures"].push_back({{"relator", g.relator}, {"len", g.len}});
  j["worst"] = {{"ratio", rep.worst_ratio.str()},
                {"piece_len", rep.worst_piece_len},
                {"member_len", rep.worst_member_len},
                {"relator", rep.worst_relator},
                {"partner", rep.worst_partner},
                {"piece", rep.witness_piece},
                {"relator_word", rep.witness_relator_word},
                {"partner_word", rep.witness_partner_word}};
  j["rows"] = json::array();
  for (const ReportRow& r : rep.rows)
    j["rows"].push_back({{"relator", r.label},
                         {"relator_len", r.relator_len},
                         {"piece_len", r.piece_len},
                         {"member_len", r.member_len},
                         {"ratio", r.ratio.str()},
                         {"ok", r.ok},
                         {"partner", r.partner},
                         {"piece", r.piece_literal}});
  j["violations"] = json::array();
  for (const ViolationRow& v : rep.violations)
    j["violations"].push_back({{"relator", v.relator},
                               {"partner", v.partner},
                               {"piece_len", v.piece_len},
                               {"member_len", v.member_len},
                               {"ratio", v.ratio.str()},
                               {"piece", v.piece_literal}});
  return j.dump(2) + "\n";
}

std::string render_lengths_text(const std::vector<LengthRow>& rows) {
  std::ostringstream out;
  out << "relator lengths (predicted vs measured)\n";
  bool all_ok = true;
  for (const LengthRow& r : rows) {
    bool ok = r.predicted == r.measured;
    all_ok = all_ok && ok;
    out << "  " << r.label << ": " << r.predicted << " " << r.measured
        << (ok ? "" : "  MISMATCH") << "\n";
  }
  out << "result: " << (all_ok ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string lengths_json(const std::vector<LengthRow>& rows) {
  json j = json::array();
  for (const LengthRow& r : rows)
    j.push_back({{"relator", r.label},
                 {"predicted", r.predicted},
                 {"measured", r.measured}});
  return j.dump(2) + "\n";
}

std::string render_embedding_text(const EmbeddingReport& rep) {
  std::ostringstream out;
  out << "factor embedding check (Dehn-irreducibility of factor letters)\n";
  std::string cur;
  int ok_count = 0, total = 0;
  for (const EmbeddingRow& r : rep.rows) {
    ++total;
    if (r.ok) ++ok_count;
    if (!r.ok)
      out << "  COLLAPSE: " << r.factor << "." << r.element << "\n";
  }
  out << "  " << ok_count << "/" << total
      << " nonidentity letters certified nontrivial\n";
  out << "result: " << (rep.pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string embedding_json(const EmbeddingReport& rep) {
  json j;
  j["pass"] = rep.pass;
  j["letters"] = json::array();
  for (const EmbeddingRow& r : rep.rows)
    j["letters"].push_back(
        {{"factor", r.factor}, {"element", r.element}, {"ok", r.ok}});
  return j.dump(2) + "\n";
}

std::string render_generation_text(const GenerationReport& rep) {
  std::ostringstream out;
  out << "generation check\n";
  for (const GenerationRow& r : rep.rows)
    out << "  " << r.generator << " expressed via " << r.relator
        << " (expression length " << r.expression_len << ")"
        << (r.verified ? " verified" : " UNVERIFIED") << "\n";
  for (const std::string& g : rep.unexpressed)
    out << "  " << g << ": not syntactically expressible\n";
  out << "result: " << (rep.pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string generation_json(const GenerationReport& rep) {
  json j;
  j["pass"] = rep.pass;
  j["expressed"] = json::array();
  for (const GenerationRow& r : rep.rows)
    j["expressed"].push_back({{"generator", r.generator},
                              {"relator", r.relator},
                              {"expression_len", r.expression_len},
                              {"verified", r.verified}});
  j["unexpressed"] = rep.unexpressed;
  return j.dump(2) + "\n";
}

std::string render_ratio_scan_text(
    const std::vector<std::pair<int, Rational>>& rows) {
  std::ostringstream out;
  for (const auto& [i, r] : rows)
    out << "  i=" << i << ": " << r.str() << "\n";
  return out.str();
}

std::string trace_json(const ReductionTrace& trace) {
  json j;
  j["initial"] = to_literal(trace.initial);
  j["final"] = to_literal(trace.final_word);
  j["trivial"] = trace.final_word.empty();
  j["steps"] = json::array();
  for (const TraceStep& s : trace.steps) {
    json step;
    switch (s.kind) {
      case TraceStep::Kind::cyclic_cancel: step["kind"] = "cyclic-cancel"; break;
      case TraceStep::Kind::cyclic_merge: step["kind"] = "cyclic-merge"; break;
      case TraceStep::Kind::relator_sub: step["kind"] = "relator-sub"; break;
    }
    step["rotation"] = s.rotation;
    step["relator"] = s.relator;
    step["class_offset"] = s.class_offset;
    step["match_len"] = s.match_len;
    step["result_len"] = s.result_len;
    j["steps"].push_back(std::move(step));
  }
  return j.dump(2) + "\n";
}

}  // namespace sc
