#pragma once

#include <string>
#include <variant>
#include <vector>

#include "snawb/dsl/ast.hpp"

namespace snawb::dsl {

struct NamedRef {
  std::string name;
  Span span;
};

// A relationship definition that passed type checking. Immutable and safe
// to share across concurrent evaluations.
struct TypedRelationship {
  RelationshipDefinition definition;
  std::string canonical_text;
  // SHA-256 of canonical_text.
  std::string hash;
  // Contact-level weights of the bound roster question.
  std::vector<int> weight_domain;

  const std::string& name() const { return definition.name; }
};

struct TypedAttribute {
  AttributeDefinition definition;
  std::string canonical_text;
  std::string hash;
  // attr(...) references, in source order, duplicates removed.
  std::vector<NamedRef> attribute_refs;
  // Networks named by metric(...).
  std::vector<std::string> network_refs;
  std::vector<std::string> instrument_refs;
  std::vector<std::string> question_refs;

  const std::string& name() const { return definition.name; }
};

using TypedDefinition = std::variant<TypedRelationship, TypedAttribute>;

}  // namespace snawb::dsl
