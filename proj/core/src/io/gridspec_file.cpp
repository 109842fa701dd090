#include "snawb/io/gridspec_file.hpp"

#include <json.hpp>

#include "snawb/error.hpp"

namespace snawb::io {

using nlohmann::json;

namespace {

std::string required_text(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_string()) {
    throw Error(std::string("grid spec: field '") + key + "' must be a string");
  }
  return doc[key].get<std::string>();
}

std::vector<std::string> name_list(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw Error(std::string("grid spec: field '") + key + "' must be a list of names");
  }
  std::vector<std::string> out;
  for (const auto& item : doc[key]) {
    if (!item.is_string()) throw Error(std::string("grid spec: field '") + key + "' must be a list of names");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

GridSpecFile parse_gridspec(std::string_view text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("grid spec: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error("grid spec: expected a JSON object");

  GridSpecFile file;
  file.questionnaire = resolve(base_dir, required_text(doc, "questionnaire"));
  file.responses = resolve(base_dir, required_text(doc, "responses"));
  if (doc.contains("definitions")) file.definitions = resolve(base_dir, required_text(doc, "definitions"));

  auto& spec = file.spec;
  spec.wave = required_text(doc, "wave");
  spec.roster_question = required_text(doc, "roster_question");
  spec.relationships = name_list(doc, "relationships");
  spec.attributes = name_list(doc, "attributes");
  if (doc.contains("metrics")) {
    for (const auto& name : name_list(doc, "metrics")) {
      auto kind = parse_metric_name(name);
      if (!kind) throw Error("grid spec: unknown metric '" + name + "'");
      spec.metrics.push_back(*kind);
    }
  }
  if (doc.contains("layout_seed")) {
    if (!doc["layout_seed"].is_number_unsigned()) throw Error("grid spec: layout_seed must be a non-negative integer");
    spec.layout_seed = doc["layout_seed"].get<std::uint64_t>();
  }
  return file;
}

std::string write_gridspec(const GridSpecFile& file) {
  json doc;
  doc["questionnaire"] = file.questionnaire.generic_string();
  doc["responses"] = file.responses.generic_string();
  if (file.definitions) doc["definitions"] = file.definitions->generic_string();
  doc["wave"] = file.spec.wave;
  doc["roster_question"] = file.spec.roster_question;
  doc["relationships"] = file.spec.relationships;
  doc["attributes"] = file.spec.attributes;
  json metrics = json::array();
  for (auto kind : file.spec.metrics) metrics.push_back(std::string(metric_name(kind)));
  doc["metrics"] = metrics;
  doc["layout_seed"] = file.spec.layout_seed;
  return doc.dump(2) + "\n";
}

}  // namespace snawb::io
