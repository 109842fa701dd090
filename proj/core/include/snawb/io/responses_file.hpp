#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "snawb/io/diagnostics.hpp"
#include "snawb/survey/model.hpp"

namespace snawb::io {

// Fixed leading columns of a responses file, in order.
inline constexpr std::string_view kResponseColumns[] = {
    "individual_id", "display_name", "gender", "classroom_id", "school_id", "wave", "questionnaire_id",
};

struct ResponseRow {
  int row = 0;
  survey::Individual individual;
  survey::ResponseSet responses;
};

struct ResponsesLoad {
  std::vector<ResponseRow> rows;
  std::vector<FileDiagnostic> diagnostics;
};

// Comma-separated, one row per individual per wave. Choice columns hold the
// 0-based option index; roster columns hold "peer:weight" pairs separated by
// ';'. Empty cells are unanswered.
ResponsesLoad parse_responses(std::string_view text, const survey::Questionnaire& questionnaire,
                              std::string source_name = "responses");

std::string write_responses(const survey::Questionnaire& questionnaire,
                            const std::vector<survey::Individual>& individuals,
                            const std::vector<survey::ResponseSet>& responses);

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
std::string csv_escape(std::string_view field);

bool is_valid_id(std::string_view id);

}  // namespace snawb::io
