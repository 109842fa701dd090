#include "snawb/io/network_export.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <charconv>
#include <sstream>

#include "snawb/error.hpp"

namespace snawb::io {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string_view graphml_type(dsl::ResultType type) {
  switch (type) {
    case dsl::ResultType::boolean: return "boolean";
    case dsl::ResultType::integer: return "long";
    case dsl::ResultType::real: return "double";
  }
  return "string";
}

// Tabs and newlines would break the edge-list record structure.
void require_plain(std::string_view field) {
  if (field.find_first_of("\t\r\n") != std::string_view::npos) {
    throw Error("value '" + std::string(field) + "' contains a tab or newline");
  }
}

struct NodeRow {
  std::string id;
  std::vector<std::pair<std::string, std::string>> values;  // column -> text, empty = omitted
};

std::vector<NodeRow> collect_rows(const net::DerivedNetwork& network, const net::Layout& layout,
                                  std::span<const survey::Individual> individuals,
                                  std::span<const NodeAttributeColumn> attributes) {
  if (layout.population != network.population) {
    throw InputMismatchError("layout population does not match network '" + network.name + "'");
  }
  std::map<std::string, const survey::Individual*> by_id;
  for (const auto& ind : individuals) by_id[ind.id] = &ind;

  std::vector<NodeRow> rows;
  for (const auto& id : network.population) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw InputMismatchError("no individual record for node '" + id + "'");
    const auto& p = layout.coordinates.at(id);
    NodeRow row{id, {}};
    row.values.emplace_back("gender", std::string(survey::to_string(it->second->gender)));
    row.values.emplace_back("classroom", it->second->classroom_id);
    row.values.emplace_back("x", format_double(p.x));
    row.values.emplace_back("y", format_double(p.y));
    for (const auto& column : attributes) {
      auto v = column.values.find(id);
      std::string text;
      if (v != column.values.end() && !std::holds_alternative<dsl::NotEvaluable>(v->second)) {
        text = dsl::format_value(v->second);
      }
      row.values.emplace_back(column.name, std::move(text));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string write_graphml(const net::DerivedNetwork& network, const std::vector<NodeRow>& rows,
                          std::span<const NodeAttributeColumn> attributes) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"k_network\" for=\"graph\" attr.name=\"network\" attr.type=\"string\"/>\n"
      << "  <key id=\"k_provenance\" for=\"graph\" attr.name=\"provenance\" attr.type=\"string\"/>\n"
      << "  <key id=\"k_gender\" for=\"node\" attr.name=\"gender\" attr.type=\"string\"/>\n"
      << "  <key id=\"k_classroom\" for=\"node\" attr.name=\"classroom\" attr.type=\"string\"/>\n"
      << "  <key id=\"k_x\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n"
      << "  <key id=\"k_y\" for=\"node\" attr.name=\"y\" attr.type=\"double\"/>\n";
  for (const auto& column : attributes) {
    out << "  <key id=\"k_" << xml_escape(column.name) << "\" for=\"node\" attr.name=\"" << xml_escape(column.name)
        << "\" attr.type=\"" << graphml_type(column.type) << "\"/>\n";
  }
  out << "  <graph id=\"" << xml_escape(network.name) << "\" edgedefault=\"undirected\">\n"
      << "    <data key=\"k_network\">" << xml_escape(network.name) << "</data>\n"
      << "    <data key=\"k_provenance\">" << network.provenance.hash << "</data>\n";
  for (const auto& row : rows) {
    out << "    <node id=\"" << xml_escape(row.id) << "\">\n";
    for (const auto& [key, text] : row.values) {
      if (text.empty()) continue;
      out << "      <data key=\"k_" << xml_escape(key) << "\">" << xml_escape(text) << "</data>\n";
    }
    out << "    </node>\n";
  }
  for (const auto& [a, b] : network.edges) {
    out << "    <edge source=\"" << xml_escape(a) << "\" target=\"" << xml_escape(b) << "\"/>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

std::string write_edgelist(const net::DerivedNetwork& network, const std::vector<NodeRow>& rows,
                           std::span<const NodeAttributeColumn> attributes) {
  require_plain(network.name);
  std::string out = "network\t" + network.name + "\nprovenance\t" + network.provenance.hash + "\n";
  out += "nodes\tid\tgender\tclassroom\tx\ty";
  for (const auto& column : attributes) {
    require_plain(column.name);
    out += "\tattr:" + column.name;
  }
  out += '\n';
  for (const auto& row : rows) {
    require_plain(row.id);
    out += "node\t" + row.id;
    for (const auto& [key, text] : row.values) {
      require_plain(text);
      out += '\t' + text;
    }
    out += '\n';
  }
  for (const auto& [a, b] : network.edges) out += "edge\t" + a + '\t' + b + '\n';
  return out;
}

ImportedNetwork read_graphml(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw Error(std::string("malformed GraphML: ") + e.what());
  }
  const auto& root = tree.get_child("graphml");
  std::map<std::string, std::string> key_names;
  for (const auto& [tag, child] : root) {
    if (tag == "key") key_names[child.get<std::string>("<xmlattr>.id")] = child.get<std::string>(boost::property_tree::ptree::path_type("<xmlattr>/attr.name", '/'));
  }
  auto key_name = [&](const pt::ptree& data) {
    const auto id = data.get<std::string>("<xmlattr>.key");
    auto it = key_names.find(id);
    if (it == key_names.end()) throw Error("GraphML data refers to undeclared key '" + id + "'");
    return it->second;
  };

  ImportedNetwork net;
  const auto& graph = root.get_child("graph");
  for (const auto& [tag, child] : graph) {
    if (tag == "data") {
      const auto name = key_name(child);
      if (name == "network") net.name = child.data();
      if (name == "provenance") net.provenance_hash = child.data();
    } else if (tag == "node") {
      auto& attrs = net.nodes[child.get<std::string>("<xmlattr>.id")];
      for (const auto& [inner, data] : child) {
        if (inner == "data") attrs[key_name(data)] = data.data();
      }
    } else if (tag == "edge") {
      net.edges.insert(
          net::make_edge(child.get<std::string>("<xmlattr>.source"), child.get<std::string>("<xmlattr>.target")));
    }
  }
  return net;
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

ImportedNetwork read_edgelist(std::string_view text) {
  ImportedNetwork net;
  std::vector<std::string> columns;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    const auto& tag = fields[0];
    auto fail = [&](const std::string& why) {
      throw Error("edge list line " + std::to_string(line_no) + ": " + why);
    };
    if (tag == "network" && fields.size() == 2) {
      net.name = fields[1];
    } else if (tag == "provenance" && fields.size() == 2) {
      net.provenance_hash = fields[1];
    } else if (tag == "nodes") {
      columns.assign(fields.begin() + 1, fields.end());
      if (columns.empty() || columns[0] != "id") fail("node header must start with 'id'");
      for (auto& c : columns) {
        if (c.rfind("attr:", 0) == 0) c.erase(0, 5);
      }
    } else if (tag == "node") {
      if (columns.empty()) fail("node record before the node header");
      if (fields.size() != columns.size() + 1) fail("node record has the wrong number of fields");
      auto& attrs = net.nodes[fields[1]];
      for (std::size_t i = 1; i < columns.size(); ++i) {
        if (!fields[i + 1].empty()) attrs[columns[i]] = fields[i + 1];
      }
    } else if (tag == "edge" && fields.size() == 3) {
      net.edges.insert(net::make_edge(fields[1], fields[2]));
    } else {
      fail("unrecognized record '" + tag + "'");
    }
  }
  return net;
}

}  // namespace

std::optional<NetworkFormat> parse_network_format(std::string_view name) {
  if (name == "graphml") return NetworkFormat::graphml;
  if (name == "edgelist") return NetworkFormat::edgelist;
  return std::nullopt;
}

std::string_view to_string(NetworkFormat format) {
  return format == NetworkFormat::graphml ? "graphml" : "edgelist";
}

std::string export_network(const net::DerivedNetwork& network, const net::Layout& layout,
                           std::span<const survey::Individual> individuals,
                           std::span<const NodeAttributeColumn> attributes, NetworkFormat format) {
  const auto rows = collect_rows(network, layout, individuals, attributes);
  return format == NetworkFormat::graphml ? write_graphml(network, rows, attributes)
                                          : write_edgelist(network, rows, attributes);
}

ImportedNetwork import_network(std::string_view text, NetworkFormat format) {
  return format == NetworkFormat::graphml ? read_graphml(text) : read_edgelist(text);
}

}  // namespace snawb::io
