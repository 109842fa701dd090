#include "snawb/dsl/evaluate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "snawb/error.hpp"

namespace snawb::dsl {

std::string format_value(const AttributeValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NotEvaluable>) {
          return "n/a";
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else {
          char buf[64];
          auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
          return std::string(buf, ptr);
        }
      },
      value);
}

bool is_true(const AttributeValue& value) {
  const auto* b = std::get_if<bool>(&value);
  return b != nullptr && *b;
}

namespace {

struct Absent {
  friend bool operator==(const Absent&, const Absent&) = default;
};

using Value = std::variant<Absent, bool, std::int64_t, double, survey::Gender>;
// nullopt: not evaluable.
using Result = std::optional<Value>;

struct PairWeights {
  std::optional<int> forward;
  std::optional<int> backward;
};

bool is_number(const Value& v) {
  return std::holds_alternative<std::int64_t>(v) || std::holds_alternative<double>(v);
}

double as_double(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  return std::get<double>(v);
}

bool both_int(const Value& a, const Value& b) {
  return std::holds_alternative<std::int64_t>(a) && std::holds_alternative<std::int64_t>(b);
}

Value weight_value(const std::optional<int>& w) {
  if (!w) return Absent{};
  return static_cast<std::int64_t>(*w);
}

// Exact ordering between integers and reals: integers in range are
// representable as doubles, so no rounding occurs.
int compare_numbers(const Value& a, const Value& b) {
  if (both_int(a, b)) {
    const auto x = std::get<std::int64_t>(a);
    const auto y = std::get<std::int64_t>(b);
    return x < y ? -1 : (x > y ? 1 : 0);
  }
  const double x = as_double(a);
  const double y = as_double(b);
  return x < y ? -1 : (x > y ? 1 : 0);
}

class Evaluator {
 public:
  Evaluator(const PairWeights* weights, const AttributeEnvironment* env) : weights_(weights), env_(env) {}

  Result eval(const Expr& expr) const {
    return std::visit([&](const auto& node) { return eval_node(node); }, expr.node);
  }

 private:
  Result eval_node(const IntLiteral& lit) const { return Value{lit.value}; }
  Result eval_node(const RealLiteral& lit) const { return Value{lit.value}; }
  Result eval_node(const BoolLiteral& lit) const { return Value{lit.value}; }

  Result eval_node(const Name& name) const {
    if (name.id == "w_ab") return weight_value(weights_->forward);
    if (name.id == "w_ba") return weight_value(weights_->backward);
    if (name.id == "reciprocal") return Value{weights_->forward.has_value() && weights_->backward.has_value()};
    if (name.id == "gender") return Value{env_->gender()};
    if (name.id == "male") return Value{survey::Gender::male};
    if (name.id == "female") return Value{survey::Gender::female};
    if (name.id == "unspecified") return Value{survey::Gender::unspecified};
    throw Error("unresolved identifier '" + name.id + "' reached evaluation");
  }

  Result eval_node(const Unary& unary) const {
    Result operand = eval(*unary.operand);
    if (!operand) return std::nullopt;
    if (unary.op == UnaryOp::logical_not) return Value{!std::get<bool>(*operand)};
    if (const auto* i = std::get_if<std::int64_t>(&*operand)) return Value{-*i};
    if (const auto* d = std::get_if<double>(&*operand)) return Value{-*d};
    return std::nullopt;
  }

  Result eval_node(const Binary& binary) const {
    if (binary.op == BinaryOp::logical_and || binary.op == BinaryOp::logical_or) {
      Result lhs = eval(*binary.lhs);
      if (!lhs) return std::nullopt;
      const bool l = std::get<bool>(*lhs);
      if (binary.op == BinaryOp::logical_and && !l) return Value{false};
      if (binary.op == BinaryOp::logical_or && l) return Value{true};
      return eval(*binary.rhs);
    }

    Result lhs = eval(*binary.lhs);
    if (!lhs) return std::nullopt;
    Result rhs = eval(*binary.rhs);
    if (!rhs) return std::nullopt;
    const Value& a = *lhs;
    const Value& b = *rhs;

    switch (binary.op) {
      case BinaryOp::eq:
      case BinaryOp::ne: {
        bool equal = false;
        if (is_number(a) && is_number(b)) {
          equal = compare_numbers(a, b) == 0;
        } else if (std::holds_alternative<Absent>(a) || std::holds_alternative<Absent>(b)) {
          return std::nullopt;
        } else {
          equal = a == b;
        }
        return Value{binary.op == BinaryOp::eq ? equal : !equal};
      }
      case BinaryOp::lt:
      case BinaryOp::le:
      case BinaryOp::gt:
      case BinaryOp::ge: {
        if (!is_number(a) || !is_number(b)) return std::nullopt;
        const int c = compare_numbers(a, b);
        switch (binary.op) {
          case BinaryOp::lt: return Value{c < 0};
          case BinaryOp::le: return Value{c <= 0};
          case BinaryOp::gt: return Value{c > 0};
          default: return Value{c >= 0};
        }
      }
      case BinaryOp::add:
      case BinaryOp::sub:
      case BinaryOp::mul: {
        if (!is_number(a) || !is_number(b)) return std::nullopt;
        if (both_int(a, b)) {
          const auto x = std::get<std::int64_t>(a);
          const auto y = std::get<std::int64_t>(b);
          return Value{binary.op == BinaryOp::add ? x + y : binary.op == BinaryOp::sub ? x - y : x * y};
        }
        const double x = as_double(a);
        const double y = as_double(b);
        return Value{binary.op == BinaryOp::add ? x + y : binary.op == BinaryOp::sub ? x - y : x * y};
      }
      case BinaryOp::div: {
        if (!is_number(a) || !is_number(b)) return std::nullopt;
        const double y = as_double(b);
        if (y == 0.0) return std::nullopt;
        return Value{as_double(a) / y};
      }
      default: return std::nullopt;
    }
  }

  Result eval_node(const Conditional& cond) const {
    Result c = eval(*cond.condition);
    if (!c) return std::nullopt;
    return std::get<bool>(*c) ? eval(*cond.then_branch) : eval(*cond.else_branch);
  }

  Result eval_node(const Call& call) const {
    const std::string& fn = call.function;
    if (fn == "min" || fn == "max" || fn == "sum" || fn == "mean") return aggregate(call);
    if (fn == "is_present") {
      const auto& id = std::get<Name>(call.args[0]->node).id;
      return Value{(id == "w_ab" ? weights_->forward : weights_->backward).has_value()};
    }
    const auto& arg = std::get<Name>(call.args[0]->node).id;
    if (fn == "score") {
      const auto s = env_->score(arg);
      if (s.missing_data) return std::nullopt;
      return Value{static_cast<std::int64_t>(s.score)};
    }
    if (fn == "complete") return Value{!env_->score(arg).missing_data};
    if (fn == "answer") {
      auto a = env_->answer(arg);
      if (!a) return std::nullopt;
      return Value{static_cast<std::int64_t>(*a)};
    }
    if (fn == "metric") {
      const auto& metric = std::get<Name>(call.args[1]->node).id;
      auto kind = parse_metric_name(metric);
      if (!kind) throw Error("unknown metric '" + metric + "' reached evaluation");
      auto value = env_->metric(arg, *kind);
      if (const auto* i = std::get_if<std::int64_t>(&value)) return Value{*i};
      return Value{std::get<double>(value)};
    }
    if (fn == "attr") {
      auto value = env_->attribute(arg);
      return std::visit(
          [](const auto& v) -> Result {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, NotEvaluable>) {
              return std::nullopt;
            } else {
              return Value{v};
            }
          },
          value);
    }
    throw Error("unknown function '" + fn + "' reached evaluation");
  }

  Result aggregate(const Call& call) const {
    std::vector<Value> values;
    values.reserve(call.args.size());
    for (const auto& arg : call.args) {
      Result r = eval(*arg);
      if (!r || !is_number(*r)) return std::nullopt;
      values.push_back(*r);
    }
    const bool all_int = std::all_of(values.begin(), values.end(),
                                     [](const Value& v) { return std::holds_alternative<std::int64_t>(v); });
    const std::string& fn = call.function;
    if (fn == "min" || fn == "max") {
      Value best = values.front();
      for (const auto& v : values) {
        const int c = compare_numbers(v, best);
        if ((fn == "min" && c < 0) || (fn == "max" && c > 0)) best = v;
      }
      if (!all_int) return Value{as_double(best)};
      return best;
    }
    if (all_int && fn == "sum") {
      std::int64_t total = 0;
      for (const auto& v : values) total += std::get<std::int64_t>(v);
      return Value{total};
    }
    double total = 0.0;
    for (const auto& v : values) total += as_double(v);
    if (fn == "mean") return Value{total / static_cast<double>(values.size())};
    return Value{total};
  }

  const PairWeights* weights_;
  const AttributeEnvironment* env_;
};

}  // namespace

bool evaluate_relationship(const TypedRelationship& relationship, std::optional<int> w_ab, std::optional<int> w_ba) {
  const PairWeights weights{w_ab, w_ba};
  Evaluator evaluator(&weights, nullptr);
  Result r = evaluator.eval(*relationship.definition.body);
  // Only a zero divisor can make a checked relationship body unevaluable;
  // such pairs are not connected.
  if (!r) return false;
  return std::get<bool>(*r);
}

AttributeValue evaluate_attribute(const TypedAttribute& attribute, const AttributeEnvironment& env) {
  const PairWeights none{};
  Evaluator evaluator(&none, &env);
  Result r = evaluator.eval(*attribute.definition.body);
  if (!r) return NotEvaluable{};
  switch (attribute.definition.result_type) {
    case ResultType::boolean: return std::get<bool>(*r);
    case ResultType::integer: return std::get<std::int64_t>(*r);
    case ResultType::real: return as_double(*r);
  }
  return NotEvaluable{};
}

}  // namespace snawb::dsl
