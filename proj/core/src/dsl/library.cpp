#include "snawb/dsl/library.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "snawb/dsl/evaluate.hpp"
#include "snawb/dsl/parser.hpp"
#include "snawb/dsl/printer.hpp"
#include "snawb/hash.hpp"
#include "snawb/metric_kind.hpp"

namespace snawb::dsl {

namespace {

enum class ExprType { boolean, integer, real, gender };

std::string_view to_string(ExprType type) {
  switch (type) {
    case ExprType::boolean: return "bool";
    case ExprType::integer: return "int";
    case ExprType::real: return "real";
    case ExprType::gender: return "gender";
  }
  return "?";
}

bool is_numeric(ExprType type) { return type == ExprType::integer || type == ExprType::real; }

ExprType widen(ExprType a, ExprType b) {
  return a == ExprType::integer && b == ExprType::integer ? ExprType::integer : ExprType::real;
}

constexpr unsigned kForward = 1;   // w_ab known present
constexpr unsigned kBackward = 2;  // w_ba known present

bool is_gender_literal(std::string_view id) { return id == "male" || id == "female" || id == "unspecified"; }

const Name* as_name(const Expr& expr) { return std::get_if<Name>(&expr.node); }

// Presence facts that hold whenever `expr` evaluates to true.
unsigned facts_when_false(const Expr& expr);

unsigned facts_when_true(const Expr& expr) {
  if (const auto* name = as_name(expr)) {
    return name->id == "reciprocal" ? (kForward | kBackward) : 0u;
  }
  if (const auto* call = std::get_if<Call>(&expr.node)) {
    if (call->function == "is_present" && call->args.size() == 1) {
      if (const auto* arg = as_name(*call->args[0])) {
        if (arg->id == "w_ab") return kForward;
        if (arg->id == "w_ba") return kBackward;
      }
    }
    return 0;
  }
  if (const auto* unary = std::get_if<Unary>(&expr.node)) {
    return unary->op == UnaryOp::logical_not ? facts_when_false(*unary->operand) : 0u;
  }
  if (const auto* binary = std::get_if<Binary>(&expr.node)) {
    if (binary->op == BinaryOp::logical_and) return facts_when_true(*binary->lhs) | facts_when_true(*binary->rhs);
    if (binary->op == BinaryOp::logical_or) return facts_when_true(*binary->lhs) & facts_when_true(*binary->rhs);
  }
  return 0;
}

unsigned facts_when_false(const Expr& expr) {
  if (const auto* unary = std::get_if<Unary>(&expr.node)) {
    return unary->op == UnaryOp::logical_not ? facts_when_true(*unary->operand) : 0u;
  }
  if (const auto* binary = std::get_if<Binary>(&expr.node)) {
    if (binary->op == BinaryOp::logical_or) return facts_when_false(*binary->lhs) | facts_when_false(*binary->rhs);
    if (binary->op == BinaryOp::logical_and) return facts_when_false(*binary->lhs) & facts_when_false(*binary->rhs);
  }
  return 0;
}

struct NameTable {
  std::map<std::string, std::string, std::less<>> relationships;  // name -> roster question
  std::map<std::string, ResultType, std::less<>> attributes;
};

ExprType from_result(ResultType type) {
  switch (type) {
    case ResultType::boolean: return ExprType::boolean;
    case ResultType::integer: return ExprType::integer;
    case ResultType::real: return ExprType::real;
  }
  return ExprType::boolean;
}

void push_unique(std::vector<std::string>& list, const std::string& value) {
  if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(value);
}

class Checker {
 public:
  enum class Kind { relationship, attribute };

  Checker(Kind kind, std::string definition, const NameTable& names, const survey::Questionnaire& schema,
          std::vector<Diagnostic>& diagnostics)
      : kind_(kind), definition_(std::move(definition)), names_(names), schema_(schema), out_(diagnostics) {}

  std::optional<ExprType> check(const Expr& expr, unsigned guards, bool in_condition) {
    return std::visit([&](const auto& node) { return check_node(node, expr, guards, in_condition); }, expr.node);
  }

  std::size_t error_count() const { return errors_; }

  std::vector<NamedRef> attribute_refs;
  std::vector<std::string> network_refs;
  std::vector<std::string> instrument_refs;
  std::vector<std::string> question_refs;

  void report(DiagnosticCode code, const Span& span, std::string message) {
    ++errors_;
    out_.push_back({code, span, std::move(message), {}, definition_});
  }

 private:
  bool relationship() const { return kind_ == Kind::relationship; }

  std::optional<ExprType> check_node(const IntLiteral&, const Expr&, unsigned, bool) { return ExprType::integer; }
  std::optional<ExprType> check_node(const RealLiteral&, const Expr&, unsigned, bool) { return ExprType::real; }
  std::optional<ExprType> check_node(const BoolLiteral&, const Expr&, unsigned, bool) { return ExprType::boolean; }

  std::optional<ExprType> check_node(const Name& name, const Expr& expr, unsigned guards, bool) {
    const std::string& id = name.id;
    if (id == "w_ab" || id == "w_ba") {
      if (!relationship()) {
        report(DiagnosticCode::wrong_context, expr.span, "'" + id + "' is only available in relationship definitions");
        return std::nullopt;
      }
      const unsigned bit = id == "w_ab" ? kForward : kBackward;
      if ((guards & bit) == 0) {
        report(DiagnosticCode::unguarded_absent, expr.span,
               "'" + id + "' may be absent here; guard it with 'reciprocal' or 'is_present(" + id + ")'");
        return std::nullopt;
      }
      return ExprType::integer;
    }
    if (id == "reciprocal") {
      if (!relationship()) {
        report(DiagnosticCode::wrong_context, expr.span, "'reciprocal' is only available in relationship definitions");
        return std::nullopt;
      }
      return ExprType::boolean;
    }
    if (id == "gender") {
      if (relationship()) {
        report(DiagnosticCode::wrong_context, expr.span, "'gender' is only available in attribute definitions");
      } else {
        report(DiagnosticCode::gender_uncovered, expr.span,
               "'gender' must be compared with ==/!= inside an if condition so the unspecified case is decided "
               "explicitly");
      }
      return std::nullopt;
    }
    if (is_gender_literal(id)) {
      if (relationship()) {
        report(DiagnosticCode::wrong_context, expr.span, "'" + id + "' is only available in attribute definitions");
        return std::nullopt;
      }
      return ExprType::gender;
    }
    report(DiagnosticCode::unknown_identifier, expr.span, "unknown identifier '" + id + "'");
    return std::nullopt;
  }

  std::optional<ExprType> check_node(const Unary& unary, const Expr& expr, unsigned guards, bool in_condition) {
    if (unary.op == UnaryOp::logical_not) {
      auto t = check(*unary.operand, guards, in_condition);
      if (!t) return std::nullopt;
      if (*t != ExprType::boolean) return mismatch(expr.span, "'not' expects bool", *t);
      return ExprType::boolean;
    }
    auto t = check(*unary.operand, guards, false);
    if (!t) return std::nullopt;
    if (!is_numeric(*t)) return mismatch(expr.span, "unary '-' expects a number", *t);
    return t;
  }

  std::optional<ExprType> mismatch(const Span& span, const std::string& what, ExprType got) {
    report(DiagnosticCode::type_mismatch, span, what + ", found " + std::string(to_string(got)));
    return std::nullopt;
  }

  bool is_gender_test(const Binary& binary) const {
    if (binary.op != BinaryOp::eq && binary.op != BinaryOp::ne) return false;
    const auto* l = as_name(*binary.lhs);
    const auto* r = as_name(*binary.rhs);
    if (l == nullptr || r == nullptr) return false;
    return (l->id == "gender" && is_gender_literal(r->id)) || (r->id == "gender" && is_gender_literal(l->id));
  }

  std::optional<ExprType> check_node(const Binary& binary, const Expr& expr, unsigned guards, bool in_condition) {
    if (binary.op == BinaryOp::logical_and || binary.op == BinaryOp::logical_or) {
      auto lt = check(*binary.lhs, guards, in_condition);
      const unsigned rhs_guards = guards | (binary.op == BinaryOp::logical_and ? facts_when_true(*binary.lhs)
                                                                               : facts_when_false(*binary.lhs));
      auto rt = check(*binary.rhs, rhs_guards, in_condition);
      if (!lt || !rt) return std::nullopt;
      if (*lt != ExprType::boolean || *rt != ExprType::boolean) {
        report(DiagnosticCode::type_mismatch, expr.span,
               "'" + std::string(to_string(binary.op)) + "' expects bool operands, found " +
                   std::string(to_string(*lt)) + " and " + std::string(to_string(*rt)));
        return std::nullopt;
      }
      return ExprType::boolean;
    }

    if (!relationship() && is_gender_test(binary)) {
      if (!in_condition) {
        report(DiagnosticCode::gender_uncovered, expr.span,
               "gender tests must be the condition of an if/then/else so the unspecified case is decided "
               "explicitly");
        return std::nullopt;
      }
      return ExprType::boolean;
    }

    auto lt = check(*binary.lhs, guards, false);
    auto rt = check(*binary.rhs, guards, false);
    if (!lt || !rt) return std::nullopt;
    const std::string op(to_string(binary.op));
    auto operands = [&] { return std::string(to_string(*lt)) + " and " + std::string(to_string(*rt)); };
    switch (binary.op) {
      case BinaryOp::eq:
      case BinaryOp::ne:
        if ((is_numeric(*lt) && is_numeric(*rt)) || *lt == *rt) return ExprType::boolean;
        report(DiagnosticCode::type_mismatch, expr.span, "cannot compare " + operands() + " with '" + op + "'");
        return std::nullopt;
      case BinaryOp::lt:
      case BinaryOp::le:
      case BinaryOp::gt:
      case BinaryOp::ge:
        if (is_numeric(*lt) && is_numeric(*rt)) return ExprType::boolean;
        report(DiagnosticCode::type_mismatch, expr.span, "'" + op + "' expects numbers, found " + operands());
        return std::nullopt;
      case BinaryOp::add:
      case BinaryOp::sub:
      case BinaryOp::mul:
      case BinaryOp::div:
        if (is_numeric(*lt) && is_numeric(*rt)) {
          return binary.op == BinaryOp::div ? ExprType::real : widen(*lt, *rt);
        }
        report(DiagnosticCode::type_mismatch, expr.span, "'" + op + "' expects numbers, found " + operands());
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }

  std::optional<ExprType> check_node(const Conditional& cond, const Expr& expr, unsigned guards, bool) {
    auto ct = check(*cond.condition, guards, true);
    auto tt = check(*cond.then_branch, guards | facts_when_true(*cond.condition), false);
    auto et = check(*cond.else_branch, guards | facts_when_false(*cond.condition), false);
    if (!ct || !tt || !et) return std::nullopt;
    if (*ct != ExprType::boolean) return mismatch(cond.condition->span, "if condition must be bool", *ct);
    if (is_numeric(*tt) && is_numeric(*et)) return widen(*tt, *et);
    if (*tt == *et && *tt == ExprType::boolean) return ExprType::boolean;
    report(DiagnosticCode::type_mismatch, expr.span,
           "if branches have incompatible types " + std::string(to_string(*tt)) + " and " +
               std::string(to_string(*et)));
    return std::nullopt;
  }

  bool arity(const Call& call, const Expr& expr, std::size_t expected) {
    if (call.args.size() == expected) return true;
    report(DiagnosticCode::wrong_arity, expr.span,
           "'" + call.function + "' takes " + std::to_string(expected) + " argument" + (expected == 1 ? "" : "s") +
               ", found " + std::to_string(call.args.size()));
    return false;
  }

  // Arguments that name a schema or library entity must be bare identifiers.
  const Name* name_arg(const Call& call, std::size_t index, const char* what) {
    const Expr& arg = *call.args[index];
    const auto* name = as_name(arg);
    if (name == nullptr) {
      report(DiagnosticCode::type_mismatch, arg.span,
             "argument " + std::to_string(index + 1) + " of '" + call.function + "' must name " + what);
    }
    return name;
  }

  bool attribute_only(const Call& call, const Expr& expr) {
    if (!relationship()) return true;
    report(DiagnosticCode::wrong_context, expr.span,
           "'" + call.function + "' is only available in attribute definitions");
    return false;
  }

  std::optional<ExprType> check_node(const Call& call, const Expr& expr, unsigned guards, bool) {
    const std::string& fn = call.function;
    if (fn == "min" || fn == "max" || fn == "sum" || fn == "mean") {
      if (call.args.empty()) {
        report(DiagnosticCode::wrong_arity, expr.span, "'" + fn + "' needs at least one argument");
        return std::nullopt;
      }
      std::optional<ExprType> result = ExprType::integer;
      for (const auto& arg : call.args) {
        auto t = check(*arg, guards, false);
        if (!t) {
          result.reset();
          continue;
        }
        if (!is_numeric(*t)) {
          mismatch(arg->span, "'" + fn + "' expects numbers", *t);
          result.reset();
          continue;
        }
        if (result) result = widen(*result, *t);
      }
      if (result && fn == "mean") return ExprType::real;
      return result;
    }
    if (fn == "is_present") {
      if (!relationship()) {
        report(DiagnosticCode::wrong_context, expr.span, "'is_present' is only available in relationship definitions");
        return std::nullopt;
      }
      if (!arity(call, expr, 1)) return std::nullopt;
      const auto* arg = as_name(*call.args[0]);
      if (arg == nullptr || (arg->id != "w_ab" && arg->id != "w_ba")) {
        report(DiagnosticCode::type_mismatch, call.args[0]->span, "'is_present' expects w_ab or w_ba");
        return std::nullopt;
      }
      return ExprType::boolean;
    }
    if (fn == "score" || fn == "complete") {
      if (!attribute_only(call, expr) || !arity(call, expr, 1)) return std::nullopt;
      const auto* arg = name_arg(call, 0, "an instrument");
      if (arg == nullptr) return std::nullopt;
      if (schema_.find_instrument(arg->id) == nullptr) {
        report(DiagnosticCode::unknown_identifier, call.args[0]->span, "unknown instrument '" + arg->id + "'");
        return std::nullopt;
      }
      push_unique(instrument_refs, arg->id);
      return fn == "score" ? ExprType::integer : ExprType::boolean;
    }
    if (fn == "answer") {
      if (!attribute_only(call, expr) || !arity(call, expr, 1)) return std::nullopt;
      const auto* arg = name_arg(call, 0, "a scored question");
      if (arg == nullptr) return std::nullopt;
      if (schema_.find_choice(arg->id) == nullptr) {
        report(DiagnosticCode::unknown_identifier, call.args[0]->span,
               "unknown scored question '" + arg->id + "'");
        return std::nullopt;
      }
      push_unique(question_refs, arg->id);
      return ExprType::integer;
    }
    if (fn == "metric") {
      if (!attribute_only(call, expr) || !arity(call, expr, 2)) return std::nullopt;
      const auto* network = name_arg(call, 0, "a relationship definition");
      const auto* metric = name_arg(call, 1, "a metric");
      if (network == nullptr || metric == nullptr) return std::nullopt;
      bool ok = true;
      if (!names_.relationships.contains(network->id)) {
        report(DiagnosticCode::unknown_identifier, call.args[0]->span,
               "'" + network->id + "' is not a declared network (relationship definition)");
        ok = false;
      }
      auto kind = parse_metric_name(metric->id);
      if (!kind) {
        report(DiagnosticCode::unknown_identifier, call.args[1]->span, "unknown metric '" + metric->id + "'");
        ok = false;
      }
      if (!ok) return std::nullopt;
      push_unique(network_refs, network->id);
      return metric_is_real(*kind) ? ExprType::real : ExprType::integer;
    }
    if (fn == "attr") {
      if (!attribute_only(call, expr) || !arity(call, expr, 1)) return std::nullopt;
      const auto* arg = name_arg(call, 0, "an attribute");
      if (arg == nullptr) return std::nullopt;
      auto it = names_.attributes.find(arg->id);
      if (it == names_.attributes.end()) {
        report(DiagnosticCode::unknown_identifier, call.args[0]->span, "unknown attribute '" + arg->id + "'");
        return std::nullopt;
      }
      if (std::none_of(attribute_refs.begin(), attribute_refs.end(),
                       [&](const NamedRef& r) { return r.name == arg->id; })) {
        attribute_refs.push_back({arg->id, call.args[0]->span});
      }
      return from_result(it->second);
    }
    report(DiagnosticCode::unknown_identifier, expr.span, "unknown function '" + fn + "'");
    return std::nullopt;
  }

  Kind kind_;
  std::string definition_;
  const NameTable& names_;
  const survey::Questionnaire& schema_;
  std::vector<Diagnostic>& out_;
  std::size_t errors_ = 0;
};

bool result_accepts(ResultType declared, ExprType actual) {
  switch (declared) {
    case ResultType::boolean: return actual == ExprType::boolean;
    case ResultType::integer: return actual == ExprType::integer;
    case ResultType::real: return is_numeric(actual);
  }
  return false;
}

std::optional<TypedRelationship> check_relationship(const RelationshipDefinition& def, const NameTable& names,
                                                    const survey::Questionnaire& schema,
                                                    std::vector<Diagnostic>& out) {
  Checker checker(Checker::Kind::relationship, def.name, names, schema, out);
  const auto* question = schema.find_roster(def.roster_question_id);
  if (question == nullptr) {
    checker.report(DiagnosticCode::unknown_identifier, def.question_span,
                   "unknown roster question '" + def.roster_question_id + "'");
  }
  auto type = checker.check(*def.body, 0, false);
  if (type && *type != ExprType::boolean) {
    checker.report(DiagnosticCode::type_mismatch, def.body->span,
                   "relationship body must be bool, found " + std::string(to_string(*type)));
  }
  if (checker.error_count() > 0) return std::nullopt;

  TypedRelationship typed{def, print(Definition{def}), {}, question->weights()};
  typed.hash = sha256_hex(typed.canonical_text);

  // Derived networks are undirected, so the body must not depend on which
  // member of the pair is "a".
  std::vector<std::optional<int>> domain{std::nullopt};
  for (int w : typed.weight_domain) domain.emplace_back(w);
  for (const auto& a : domain) {
    for (const auto& b : domain) {
      if (evaluate_relationship(typed, a, b) != evaluate_relationship(typed, b, a)) {
        auto show = [](const std::optional<int>& w) { return w ? std::to_string(*w) : std::string("absent"); };
        checker.report(DiagnosticCode::asymmetric_relationship, def.body->span,
                       "relationship is not symmetric: (w_ab, w_ba) = (" + show(a) + ", " + show(b) +
                           ") and its reversal disagree");
        return std::nullopt;
      }
    }
  }
  return typed;
}

std::optional<TypedAttribute> check_attribute(const AttributeDefinition& def, const NameTable& names,
                                              const survey::Questionnaire& schema, std::vector<Diagnostic>& out) {
  Checker checker(Checker::Kind::attribute, def.name, names, schema, out);
  auto type = checker.check(*def.body, 0, false);
  if (type && !result_accepts(def.result_type, *type)) {
    checker.report(DiagnosticCode::type_mismatch, def.body->span,
                   "attribute '" + def.name + "' is declared " + std::string(to_string(def.result_type)) +
                       " but its body is " + std::string(to_string(*type)));
  }
  if (checker.error_count() > 0) return std::nullopt;
  TypedAttribute typed{def, print(Definition{def}), {}, std::move(checker.attribute_refs),
                       std::move(checker.network_refs), std::move(checker.instrument_refs),
                       std::move(checker.question_refs)};
  typed.hash = sha256_hex(typed.canonical_text);
  return typed;
}

using DependencyGraph = std::map<std::string, const std::vector<NamedRef>*, std::less<>>;

// Finds a cycle through attr(...) edges reachable from `start`; returns the
// path start -> ... -> start, or empty.
std::vector<std::string> find_cycle_from(const std::string& start, const DependencyGraph& graph) {
  std::vector<std::string> path;
  std::set<std::string, std::less<>> done;
  std::function<bool(const std::string&)> visit = [&](const std::string& node) -> bool {
    path.push_back(node);
    auto it = graph.find(node);
    if (it != graph.end() && it->second != nullptr) {
      for (const auto& ref : *it->second) {
        if (ref.name == start) {
          path.push_back(start);
          return true;
        }
        if (done.contains(ref.name) || std::find(path.begin(), path.end(), ref.name) != path.end()) continue;
        if (visit(ref.name)) return true;
      }
    }
    done.insert(node);
    path.pop_back();
    return false;
  };
  if (visit(start)) return path;
  return {};
}

std::string join_path(const std::vector<std::string>& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += " -> ";
    out += path[i];
  }
  return out;
}

Span ref_span(const TypedAttribute& attr, const std::string& target) {
  for (const auto& ref : attr.attribute_refs) {
    if (ref.name == target) return ref.span;
  }
  return attr.definition.name_span;
}

NameTable names_of(const std::vector<const Definition*>& defs) {
  NameTable table;
  for (const auto* def : defs) {
    if (const auto* rel = std::get_if<RelationshipDefinition>(def)) {
      table.relationships.emplace(rel->name, rel->roster_question_id);
    } else {
      const auto& attr = std::get<AttributeDefinition>(*def);
      table.attributes.emplace(attr.name, attr.result_type);
    }
  }
  return table;
}

}  // namespace

struct LibraryBuilder {
  static LibraryBuild run(std::vector<Definition> definitions, const survey::Questionnaire& schema) {
    LibraryBuild result;
    auto& diags = result.diagnostics;

    std::vector<const Definition*> unique;
    std::set<std::string, std::less<>> seen;
    for (const auto& def : definitions) {
      const auto& name = definition_name(def);
      if (!seen.insert(name).second) {
        diags.push_back({DiagnosticCode::duplicate_name, definition_name_span(def),
                         "definition name '" + name + "' is already used", {}, name});
        continue;
      }
      unique.push_back(&def);
    }
    const NameTable names = names_of(unique);

    DefinitionsLibrary lib;
    for (const auto* def : unique) {
      if (const auto* rel = std::get_if<RelationshipDefinition>(def)) {
        if (auto typed = check_relationship(*rel, names, schema, diags)) {
          lib.relationship_index_.emplace(typed->name(), lib.relationships_.size());
          lib.relationships_.push_back(std::move(*typed));
        }
      } else if (auto typed = check_attribute(std::get<AttributeDefinition>(*def), names, schema, diags)) {
        lib.attribute_index_.emplace(typed->name(), lib.attributes_.size());
        lib.attributes_.push_back(std::move(*typed));
      }
      lib.source_order_.push_back(definition_name(*def));
    }

    DependencyGraph graph;
    for (const auto& attr : lib.attributes_) graph.emplace(attr.name(), &attr.attribute_refs);
    std::set<std::string> in_reported_cycle;
    for (const auto& attr : lib.attributes_) {
      if (in_reported_cycle.contains(attr.name())) continue;
      auto cycle = find_cycle_from(attr.name(), graph);
      if (cycle.empty()) continue;
      in_reported_cycle.insert(cycle.begin(), cycle.end());
      diags.push_back({DiagnosticCode::circular_reference, ref_span(attr, cycle[1]),
                       "circular attribute reference: " + join_path(cycle), {}, attr.name()});
    }

    if (!diags.empty()) return result;

    // Stable topological order: repeatedly take the first attribute (in
    // source order) whose references are all placed.
    std::set<std::string, std::less<>> placed;
    while (lib.evaluation_order_.size() < lib.attributes_.size()) {
      for (const auto& attr : lib.attributes_) {
        if (placed.contains(attr.name())) continue;
        const bool ready = std::all_of(attr.attribute_refs.begin(), attr.attribute_refs.end(),
                                       [&](const NamedRef& r) { return placed.contains(r.name); });
        if (ready) {
          placed.insert(attr.name());
          lib.evaluation_order_.push_back(attr.name());
          break;
        }
      }
    }
    result.library = std::move(lib);
    return result;
  }
};

LibraryBuild DefinitionsLibrary::from_source(std::string_view source, const survey::Questionnaire& schema) {
  ParseResult parsed = parse_definitions(source);
  if (!parsed.ok()) {
    LibraryBuild failed;
    failed.diagnostics = std::move(parsed.diagnostics);
    return failed;
  }
  return build(std::move(parsed.definitions), schema);
}

LibraryBuild DefinitionsLibrary::build(std::vector<Definition> definitions, const survey::Questionnaire& schema) {
  return LibraryBuilder::run(std::move(definitions), schema);
}

const TypedRelationship* DefinitionsLibrary::find_relationship(std::string_view name) const {
  auto it = relationship_index_.find(name);
  return it == relationship_index_.end() ? nullptr : &relationships_[it->second];
}

const TypedAttribute* DefinitionsLibrary::find_attribute(std::string_view name) const {
  auto it = attribute_index_.find(name);
  return it == attribute_index_.end() ? nullptr : &attributes_[it->second];
}

bool DefinitionsLibrary::contains(std::string_view name) const {
  return relationship_index_.contains(name) || attribute_index_.contains(name);
}

std::vector<Definition> DefinitionsLibrary::definitions() const {
  std::vector<Definition> out;
  out.reserve(source_order_.size());
  for (const auto& name : source_order_) {
    if (const auto* rel = find_relationship(name)) {
      out.emplace_back(rel->definition);
    } else if (const auto* attr = find_attribute(name)) {
      out.emplace_back(attr->definition);
    }
  }
  return out;
}

std::vector<std::string> DefinitionsLibrary::attribute_closure(std::string_view name) const {
  std::set<std::string, std::less<>> needed;
  std::vector<std::string> stack{std::string(name)};
  while (!stack.empty()) {
    std::string current = std::move(stack.back());
    stack.pop_back();
    const auto* attr = find_attribute(current);
    if (attr == nullptr || !needed.insert(current).second) continue;
    for (const auto& ref : attr->attribute_refs) stack.push_back(ref.name);
  }
  std::vector<std::string> ordered;
  for (const auto& n : evaluation_order_) {
    if (needed.contains(n)) ordered.push_back(n);
  }
  return ordered;
}

std::vector<std::string> DefinitionsLibrary::networks_for_attribute(std::string_view name) const {
  std::vector<std::string> out;
  for (const auto& attr_name : attribute_closure(name)) {
    for (const auto& net : find_attribute(attr_name)->network_refs) push_unique(out, net);
  }
  return out;
}

std::vector<std::string> DefinitionsLibrary::dependents_of(std::string_view name) const {
  std::vector<std::string> out;
  for (const auto& attr : attributes_) {
    const bool uses_attr = std::any_of(attr.attribute_refs.begin(), attr.attribute_refs.end(),
                                       [&](const NamedRef& r) { return r.name == name; });
    const bool uses_net = std::find(attr.network_refs.begin(), attr.network_refs.end(), name) != attr.network_refs.end();
    if (uses_attr || uses_net) out.push_back(attr.name());
  }
  return out;
}

std::string DefinitionsLibrary::canonical_text() const {
  auto defs = definitions();
  return print_library(defs);
}

CheckResult type_check(const Definition& definition, const DefinitionsLibrary& library,
                       const survey::Questionnaire& schema) {
  CheckResult result;
  const std::string& name = definition_name(definition);

  auto existing = library.definitions();
  std::vector<const Definition*> defs;
  for (const auto& def : existing) {
    if (definition_name(def) != name) defs.push_back(&def);
  }
  defs.push_back(&definition);
  const NameTable names = names_of(defs);

  if (const auto* rel = std::get_if<RelationshipDefinition>(&definition)) {
    if (auto typed = check_relationship(*rel, names, schema, result.diagnostics)) result.definition = std::move(*typed);
    return result;
  }

  auto typed = check_attribute(std::get<AttributeDefinition>(definition), names, schema, result.diagnostics);
  if (!typed) return result;

  DependencyGraph graph;
  for (const auto& attr : library.attributes()) {
    if (attr.name() != name) graph.emplace(attr.name(), &attr.attribute_refs);
  }
  graph[name] = &typed->attribute_refs;
  auto cycle = find_cycle_from(name, graph);
  if (!cycle.empty()) {
    result.diagnostics.push_back({DiagnosticCode::circular_reference, ref_span(*typed, cycle[1]),
                                  "circular attribute reference: " + join_path(cycle), {}, name});
    return result;
  }
  result.definition = std::move(*typed);
  return result;
}

}  // namespace snawb::dsl
