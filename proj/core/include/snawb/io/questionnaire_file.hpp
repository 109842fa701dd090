#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snawb/io/diagnostics.hpp"
#include "snawb/survey/model.hpp"

namespace snawb::io {

struct QuestionnaireLoad {
  std::optional<survey::Questionnaire> questionnaire;
  std::vector<FileDiagnostic> diagnostics;
};

// JSON questionnaire schema; see docs/formats.md.
QuestionnaireLoad parse_questionnaire(std::string_view text, std::string source_name = "questionnaire");
std::string write_questionnaire(const survey::Questionnaire& questionnaire);

}  // namespace snawb::io
