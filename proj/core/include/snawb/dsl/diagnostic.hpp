#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace snawb::dsl {

// 1-based line/column; `end` is one past the last character.
struct SourcePos {
  int line = 1;
  int column = 1;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

struct Span {
  SourcePos begin;
  SourcePos end;

  friend bool operator==(const Span&, const Span&) = default;
};

enum class DiagnosticCode {
  syntax,
  unknown_identifier,
  type_mismatch,
  circular_reference,
  unguarded_absent,
  gender_uncovered,
  asymmetric_relationship,
  duplicate_name,
  wrong_arity,
  wrong_context,
};

std::string_view to_string(DiagnosticCode code);

struct Diagnostic {
  DiagnosticCode code = DiagnosticCode::syntax;
  Span span;
  std::string message;
  // Token kinds the parser would have accepted (syntax errors only).
  std::vector<std::string> expected;
  // Name of the definition the diagnostic belongs to, when known.
  std::string definition;
};

// "file:line:col: error[code]: message (expected ...)"
std::string format_human(const Diagnostic& diagnostic, std::string_view source_name);

}  // namespace snawb::dsl
