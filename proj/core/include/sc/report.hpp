#pragma once

#include <string>

#include "sc/cancellation.hpp"
#include "sc/construct.hpp"
#include "sc/dehn.hpp"

namespace sc {

std::string render_report_text(const PieceReport& rep);
std::string report_json(const PieceReport& rep);

std::string render_lengths_text(const std::vector<LengthRow>& rows);
std::string lengths_json(const std::vector<LengthRow>& rows);

std::string render_embedding_text(const EmbeddingReport& rep);
std::string embedding_json(const EmbeddingReport& rep);

std::string render_generation_text(const GenerationReport& rep);
std::string generation_json(const GenerationReport& rep);

std::string render_ratio_scan_text(
    const std::vector<std::pair<int, Rational>>& rows);

std::string trace_json(const ReductionTrace& trace);

}  // namespace sc
