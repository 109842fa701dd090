#include "snawb/io/diagnostics.hpp"

#include <algorithm>

namespace snawb::io {

std::string format_human(const FileDiagnostic& d) {
  std::string out = d.source;
  if (d.row > 0) out += ":" + std::to_string(d.row);
  out += ": " + d.severity + ": ";
  if (!d.question_id.empty()) out += "[" + d.question_id + "] ";
  out += d.message;
  return out;
}

bool has_errors(const std::vector<FileDiagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const FileDiagnostic& d) { return d.severity == "error"; });
}

}  // namespace snawb::io
