#pragma once

#include <string>
#include <vector>

namespace snawb::io {

// A problem found while reading a file. `row` is the 1-based line number
// (0 when the problem is not tied to a row).
struct FileDiagnostic {
  std::string severity = "error";
  std::string source;
  int row = 0;
  std::string question_id;
  std::string message;

  friend bool operator==(const FileDiagnostic&, const FileDiagnostic&) = default;
};

std::string format_human(const FileDiagnostic& diagnostic);
bool has_errors(const std::vector<FileDiagnostic>& diagnostics);

}  // namespace snawb::io
