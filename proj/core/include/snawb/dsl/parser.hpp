#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "snawb/dsl/ast.hpp"
#include "snawb/dsl/diagnostic.hpp"

namespace snawb::dsl {

struct ParseResult {
  std::vector<Definition> definitions;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

// Parses a definitions file: any number of `rel` / `attr` blocks. After a
// syntax error the parser resumes at the next `rel` or `attr` keyword so one
// pass reports problems in every block.
ParseResult parse_definitions(std::string_view source);

struct SingleParseResult {
  std::optional<Definition> definition;
  std::vector<Diagnostic> diagnostics;
};

// Parses exactly one definition.
SingleParseResult parse_definition(std::string_view source);

}  // namespace snawb::dsl
