#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "snawb/dsl/ast.hpp"
#include "snawb/dsl/evaluate.hpp"
#include "snawb/network/derived.hpp"
#include "snawb/network/layout.hpp"
#include "snawb/survey/model.hpp"

namespace snawb::io {

enum class NetworkFormat { graphml, edgelist };

std::optional<NetworkFormat> parse_network_format(std::string_view name);
std::string_view to_string(NetworkFormat format);

// An evaluated attribute attached to nodes on export.
struct NodeAttributeColumn {
  std::string name;
  dsl::ResultType type = dsl::ResultType::boolean;
  std::map<std::string, dsl::AttributeValue> values;
};

// Emits nodes with gender, classroom, layout coordinates and the given
// attribute columns, plus undirected edges. Unevaluable values are left
// empty. Throws InputMismatchError when the layout covers another population.
std::string export_network(const net::DerivedNetwork& network, const net::Layout& layout,
                           std::span<const survey::Individual> individuals,
                           std::span<const NodeAttributeColumn> attributes, NetworkFormat format);

struct ImportedNetwork {
  std::string name;
  std::string provenance_hash;
  // id -> attribute name -> text value; absent keys were empty on export.
  std::map<std::string, std::map<std::string, std::string>> nodes;
  std::set<net::Edge> edges;
};

ImportedNetwork import_network(std::string_view text, NetworkFormat format);

}  // namespace snawb::io
