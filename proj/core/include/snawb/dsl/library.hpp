#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snawb/dsl/diagnostic.hpp"
#include "snawb/dsl/typed.hpp"
#include "snawb/survey/model.hpp"

namespace snawb::dsl {

class DefinitionsLibrary;

struct LibraryBuild;

// A checked, acyclic set of relationship and attribute definitions bound to
// one questionnaire schema. Names are unique across both kinds.
class DefinitionsLibrary {
 public:
  DefinitionsLibrary() = default;

  // Parses and checks a whole definitions file.
  static LibraryBuild from_source(std::string_view source, const survey::Questionnaire& schema);
  // Checks already-parsed definitions as one library.
  static LibraryBuild build(std::vector<Definition> definitions, const survey::Questionnaire& schema);

  const TypedRelationship* find_relationship(std::string_view name) const;
  const TypedAttribute* find_attribute(std::string_view name) const;
  bool contains(std::string_view name) const;

  // Source order.
  const std::vector<TypedRelationship>& relationships() const { return relationships_; }
  const std::vector<TypedAttribute>& attributes() const { return attributes_; }
  std::vector<Definition> definitions() const;

  // Attribute names ordered so that every attribute follows the attributes it
  // references.
  const std::vector<std::string>& evaluation_order() const { return evaluation_order_; }

  // `name` plus everything it transitively references, in evaluation order.
  std::vector<std::string> attribute_closure(std::string_view name) const;
  // Networks that must be materialized before `name` can be evaluated.
  std::vector<std::string> networks_for_attribute(std::string_view name) const;

  // Definitions that reference `name` directly (attr(...) or metric(name, ...)).
  std::vector<std::string> dependents_of(std::string_view name) const;

  std::string canonical_text() const;

 private:
  friend struct LibraryBuilder;

  std::vector<std::string> source_order_;
  std::vector<TypedRelationship> relationships_;
  std::vector<TypedAttribute> attributes_;
  std::map<std::string, std::size_t, std::less<>> relationship_index_;
  std::map<std::string, std::size_t, std::less<>> attribute_index_;
  std::vector<std::string> evaluation_order_;
};

struct LibraryBuild {
  std::optional<DefinitionsLibrary> library;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return library.has_value(); }
};

struct CheckResult {
  std::optional<TypedDefinition> definition;
  std::vector<Diagnostic> diagnostics;
};

// Checks one definition against an existing library, as if it were added to
// it (or replaced the same-named entry). Resolves identifiers, verifies the
// declared result type, guards on absent weights, gender coverage, pair
// symmetry for relationships and attr(...) acyclicity.
CheckResult type_check(const Definition& definition, const DefinitionsLibrary& library,
                       const survey::Questionnaire& schema);

}  // namespace snawb::dsl
