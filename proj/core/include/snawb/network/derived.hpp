#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "snawb/dsl/typed.hpp"
#include "snawb/network/raw_graph.hpp"

namespace snawb::net {

// Unordered pair stored with first < second.
using Edge = std::pair<std::string, std::string>;

Edge make_edge(const std::string& a, const std::string& b);

struct Provenance {
  std::string definition_hash;  // hash of the canonical definition text
  std::string input_hash;       // raw graph content hash
  std::string hash;             // binds both

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Dichotomous undirected network obtained by applying one relationship
// definition to every unordered pair of a raw roster graph.
struct DerivedNetwork {
  std::string name;
  std::string definition_text;
  std::string question_id;
  std::string wave;
  std::vector<std::string> population;
  std::set<Edge> edges;
  Provenance provenance;

  bool has_edge(const std::string& a, const std::string& b) const;
};

// Throws InputMismatchError when the definition is bound to a different
// roster question than the graph.
DerivedNetwork derive_network(const RawRosterGraph& raw, const dsl::TypedRelationship& relationship);

}  // namespace snawb::net
