#include "snawb/dsl/printer.hpp"

#include <charconv>
#include <string>

namespace snawb::dsl {

namespace {

// Binding strength; higher binds tighter. Conditionals bind loosest because
// their else-branch extends as far right as possible.
enum Precedence : int {
  kConditional = 0,
  kOr = 1,
  kAnd = 2,
  kNot = 3,
  kComparison = 4,
  kAdditive = 5,
  kMultiplicative = 6,
  kNegate = 7,
  kAtom = 8,
};

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::logical_or: return kOr;
    case BinaryOp::logical_and: return kAnd;
    case BinaryOp::eq:
    case BinaryOp::ne:
    case BinaryOp::lt:
    case BinaryOp::le:
    case BinaryOp::gt:
    case BinaryOp::ge: return kComparison;
    case BinaryOp::add:
    case BinaryOp::sub: return kAdditive;
    case BinaryOp::mul:
    case BinaryOp::div: return kMultiplicative;
  }
  return kAtom;
}

int precedence(const Expr& expr) {
  if (const auto* b = std::get_if<Binary>(&expr.node)) return precedence(b->op);
  if (const auto* u = std::get_if<Unary>(&expr.node)) return u->op == UnaryOp::negate ? kNegate : kNot;
  if (std::holds_alternative<Conditional>(expr.node)) return kConditional;
  return kAtom;
}

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string text(buf, ptr);
  if (text.find_first_of(".e") == std::string::npos) text += ".0";
  return text;
}

void emit(const Expr& expr, std::string& out);

void emit_operand(const Expr& expr, bool parenthesize, std::string& out) {
  if (parenthesize) out += '(';
  emit(expr, out);
  if (parenthesize) out += ')';
}

void emit(const Expr& expr, std::string& out) {
  std::visit(
      [&out](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntLiteral>) {
          out += std::to_string(node.value);
        } else if constexpr (std::is_same_v<T, RealLiteral>) {
          out += format_real(node.value);
        } else if constexpr (std::is_same_v<T, BoolLiteral>) {
          out += node.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, Name>) {
          out += node.id;
        } else if constexpr (std::is_same_v<T, Call>) {
          out += node.function;
          out += '(';
          for (std::size_t i = 0; i < node.args.size(); ++i) {
            if (i > 0) out += ", ";
            emit(*node.args[i], out);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, Unary>) {
          if (node.op == UnaryOp::negate) {
            out += '-';
            emit_operand(*node.operand, precedence(*node.operand) < kNegate, out);
          } else {
            out += "not ";
            emit_operand(*node.operand, precedence(*node.operand) < kNot, out);
          }
        } else if constexpr (std::is_same_v<T, Binary>) {
          const int p = precedence(node.op);
          const int lp = precedence(*node.lhs);
          const int rp = precedence(*node.rhs);
          // Comparisons do not chain, so an equal-precedence left operand
          // needs parentheses too.
          emit_operand(*node.lhs, lp < p || (p == kComparison && lp == p), out);
          out += ' ';
          out += to_string(node.op);
          out += ' ';
          emit_operand(*node.rhs, rp <= p, out);
        } else if constexpr (std::is_same_v<T, Conditional>) {
          out += "if ";
          emit(*node.condition, out);
          out += " then ";
          emit(*node.then_branch, out);
          out += " else ";
          emit(*node.else_branch, out);
        }
      },
      expr.node);
}

}  // namespace

std::string print(const Expr& expr) {
  std::string out;
  emit(expr, out);
  return out;
}

std::string print(const Definition& definition) {
  if (const auto* rel = std::get_if<RelationshipDefinition>(&definition)) {
    return "rel " + rel->name + " on " + rel->roster_question_id + ": " + print(*rel->body);
  }
  const auto& attr = std::get<AttributeDefinition>(definition);
  return "attr " + attr.name + ": " + std::string(to_string(attr.result_type)) + " = " + print(*attr.body);
}

std::string print_library(std::span<const Definition> definitions) {
  std::string out;
  for (const auto& def : definitions) {
    out += print(def);
    out += '\n';
  }
  return out;
}

}  // namespace snawb::dsl
