#pragma once

#include <span>
#include <string>

#include "snawb/dsl/ast.hpp"

namespace snawb::dsl {

// Canonical text. Parenthesizes only where precedence requires it, so
// parse(print(x)) is structurally identical to x.
std::string print(const Expr& expr);
std::string print(const Definition& definition);

// One definition per line, in the given order.
std::string print_library(std::span<const Definition> definitions);

}  // namespace snawb::dsl
