#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "snawb/dsl/typed.hpp"
#include "snawb/metric_kind.hpp"
#include "snawb/survey/model.hpp"
#include "snawb/survey/scoring.hpp"

namespace snawb::dsl {

// Marker for an attribute that cannot be computed for an individual because
// an unguarded input is missing.
struct NotEvaluable {
  friend bool operator==(const NotEvaluable&, const NotEvaluable&) = default;
};

using AttributeValue = std::variant<NotEvaluable, bool, std::int64_t, double>;

std::string format_value(const AttributeValue& value);
bool is_true(const AttributeValue& value);

// Everything an attribute body can observe about one individual.
class AttributeEnvironment {
 public:
  virtual ~AttributeEnvironment() = default;

  virtual survey::Gender gender() const = 0;
  virtual survey::InstrumentScore score(std::string_view instrument_id) const = 0;
  // Score of the chosen option; nullopt when unanswered.
  virtual std::optional<int> answer(std::string_view question_id) const = 0;
  // Must throw snawb::Error when the network has not been materialized.
  virtual MetricValue metric(std::string_view network, MetricKind kind) const = 0;
  // Value of an attribute evaluated earlier in evaluation order.
  virtual AttributeValue attribute(std::string_view name) const = 0;
};

// Pure function of the two directed weights. w_ab is the weight a gave b.
bool evaluate_relationship(const TypedRelationship& relationship, std::optional<int> w_ab,
                           std::optional<int> w_ba);

// Returns NotEvaluable when an input is missing and the body does not guard
// it (for instance score(x) with incomplete answers outside a complete(x)
// check). `and`, `or` and `if` evaluate left to right and short-circuit.
AttributeValue evaluate_attribute(const TypedAttribute& attribute, const AttributeEnvironment& env);

}  // namespace snawb::dsl
