#include "snawb/dsl/ast.hpp"

#include <sstream>

namespace snawb::dsl {

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::logical_or: return "or";
    case BinaryOp::logical_and: return "and";
    case BinaryOp::eq: return "==";
    case BinaryOp::ne: return "!=";
    case BinaryOp::lt: return "<";
    case BinaryOp::le: return "<=";
    case BinaryOp::gt: return ">";
    case BinaryOp::ge: return ">=";
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    case BinaryOp::mul: return "*";
    case BinaryOp::div: return "/";
  }
  return "?";
}

std::string_view to_string(ResultType type) {
  switch (type) {
    case ResultType::boolean: return "bool";
    case ResultType::integer: return "int";
    case ResultType::real: return "real";
  }
  return "?";
}

const std::string& definition_name(const Definition& definition) {
  return std::visit([](const auto& d) -> const std::string& { return d.name; }, definition);
}

const Span& definition_name_span(const Definition& definition) {
  return std::visit([](const auto& d) -> const Span& { return d.name_span; }, definition);
}

namespace {

struct StructuralEq {
  const Expr::Node& other;

  bool operator()(const IntLiteral& a) const { return std::get<IntLiteral>(other).value == a.value; }
  bool operator()(const RealLiteral& a) const { return std::get<RealLiteral>(other).value == a.value; }
  bool operator()(const BoolLiteral& a) const { return std::get<BoolLiteral>(other).value == a.value; }
  bool operator()(const Name& a) const { return std::get<Name>(other).id == a.id; }
  bool operator()(const Call& a) const {
    const auto& b = std::get<Call>(other);
    if (a.function != b.function || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (!same_structure(*a.args[i], *b.args[i])) return false;
    }
    return true;
  }
  bool operator()(const Unary& a) const {
    const auto& b = std::get<Unary>(other);
    return a.op == b.op && same_structure(*a.operand, *b.operand);
  }
  bool operator()(const Binary& a) const {
    const auto& b = std::get<Binary>(other);
    return a.op == b.op && same_structure(*a.lhs, *b.lhs) && same_structure(*a.rhs, *b.rhs);
  }
  bool operator()(const Conditional& a) const {
    const auto& b = std::get<Conditional>(other);
    return same_structure(*a.condition, *b.condition) && same_structure(*a.then_branch, *b.then_branch) &&
           same_structure(*a.else_branch, *b.else_branch);
  }
};

}  // namespace

bool same_structure(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(StructuralEq{b.node}, a.node);
}

bool same_structure(const Definition& a, const Definition& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ra = std::get_if<RelationshipDefinition>(&a)) {
    const auto& rb = std::get<RelationshipDefinition>(b);
    return ra->name == rb.name && ra->roster_question_id == rb.roster_question_id &&
           same_structure(*ra->body, *rb.body);
  }
  const auto& aa = std::get<AttributeDefinition>(a);
  const auto& ab = std::get<AttributeDefinition>(b);
  return aa.name == ab.name && aa.result_type == ab.result_type && same_structure(*aa.body, *ab.body);
}

std::string_view to_string(DiagnosticCode code) {
  switch (code) {
    case DiagnosticCode::syntax: return "syntax";
    case DiagnosticCode::unknown_identifier: return "unknown-identifier";
    case DiagnosticCode::type_mismatch: return "type-mismatch";
    case DiagnosticCode::circular_reference: return "circular-reference";
    case DiagnosticCode::unguarded_absent: return "unguarded-absent";
    case DiagnosticCode::gender_uncovered: return "gender-uncovered";
    case DiagnosticCode::asymmetric_relationship: return "asymmetric-relationship";
    case DiagnosticCode::duplicate_name: return "duplicate-name";
    case DiagnosticCode::wrong_arity: return "wrong-arity";
    case DiagnosticCode::wrong_context: return "wrong-context";
  }
  return "unknown";
}

std::string format_human(const Diagnostic& diagnostic, std::string_view source_name) {
  std::ostringstream out;
  out << source_name << ':' << diagnostic.span.begin.line << ':' << diagnostic.span.begin.column
      << ": error[" << to_string(diagnostic.code) << "]: " << diagnostic.message;
  if (!diagnostic.expected.empty()) {
    out << " (expected ";
    for (std::size_t i = 0; i < diagnostic.expected.size(); ++i) {
      if (i > 0) out << (i + 1 == diagnostic.expected.size() ? " or " : ", ");
      out << diagnostic.expected[i];
    }
    out << ')';
  }
  return out.str();
}

}  // namespace snawb::dsl
