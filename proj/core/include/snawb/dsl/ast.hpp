#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "snawb/dsl/diagnostic.hpp"

namespace snawb::dsl {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct IntLiteral {
  std::int64_t value = 0;
};

struct RealLiteral {
  double value = 0.0;
};

struct BoolLiteral {
  bool value = false;
};

// A bare identifier: w_ab, reciprocal, gender, male, an instrument id, ...
struct Name {
  std::string id;
};

struct Call {
  std::string function;
  std::vector<ExprPtr> args;
};

enum class UnaryOp { negate, logical_not };

struct Unary {
  UnaryOp op;
  ExprPtr operand;
};

enum class BinaryOp { logical_or, logical_and, eq, ne, lt, le, gt, ge, add, sub, mul, div };

std::string_view to_string(BinaryOp op);

struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Conditional {
  ExprPtr condition;
  ExprPtr then_branch;
  ExprPtr else_branch;
};

struct Expr {
  using Node = std::variant<IntLiteral, RealLiteral, BoolLiteral, Name, Call, Unary, Binary, Conditional>;

  Node node;
  Span span;
};

template <typename T>
ExprPtr make_expr(T node, Span span) {
  return std::make_shared<const Expr>(Expr{Expr::Node{std::move(node)}, span});
}

enum class ResultType { boolean, integer, real };

std::string_view to_string(ResultType type);

struct RelationshipDefinition {
  std::string name;
  std::string roster_question_id;
  ExprPtr body;
  Span span;
  Span name_span;
  Span question_span;
};

struct AttributeDefinition {
  std::string name;
  ResultType result_type = ResultType::boolean;
  ExprPtr body;
  Span span;
  Span name_span;
};

using Definition = std::variant<RelationshipDefinition, AttributeDefinition>;

const std::string& definition_name(const Definition& definition);
const Span& definition_name_span(const Definition& definition);

// Structural equality ignoring source spans.
bool same_structure(const Expr& a, const Expr& b);
bool same_structure(const Definition& a, const Definition& b);

}  // namespace snawb::dsl
