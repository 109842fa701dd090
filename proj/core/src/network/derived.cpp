#include "snawb/network/derived.hpp"

#include "snawb/dsl/evaluate.hpp"
#include "snawb/error.hpp"
#include "snawb/hash.hpp"

namespace snawb::net {

Edge make_edge(const std::string& a, const std::string& b) { return a < b ? Edge{a, b} : Edge{b, a}; }

bool DerivedNetwork::has_edge(const std::string& a, const std::string& b) const {
  return edges.contains(make_edge(a, b));
}

DerivedNetwork derive_network(const RawRosterGraph& raw, const dsl::TypedRelationship& relationship) {
  if (relationship.definition.roster_question_id != raw.question_id()) {
    throw InputMismatchError("definition '" + relationship.name() + "' is bound to roster question '" +
                             relationship.definition.roster_question_id + "', graph was built from '" +
                             raw.question_id() + "'");
  }

  DerivedNetwork net;
  net.name = relationship.name();
  net.definition_text = relationship.canonical_text;
  net.question_id = raw.question_id();
  net.wave = raw.wave();
  net.population = raw.population();

  const auto& pop = raw.population();
  for (std::size_t i = 0; i < pop.size(); ++i) {
    for (std::size_t j = i + 1; j < pop.size(); ++j) {
      if (dsl::evaluate_relationship(relationship, raw.weight(pop[i], pop[j]), raw.weight(pop[j], pop[i]))) {
        net.edges.emplace(pop[i], pop[j]);
      }
    }
  }

  net.provenance.definition_hash = relationship.hash;
  net.provenance.input_hash = raw.content_hash();
  ContentHasher hasher;
  net.provenance.hash =
      hasher.field("derived-network").field(relationship.hash).field(raw.content_hash()).hex();
  return net;
}

}  // namespace snawb::net
