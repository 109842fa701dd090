#include "snawb/io/anonymize.hpp"

#include <algorithm>
#include <json.hpp>

#include "snawb/error.hpp"
#include "snawb/hash.hpp"

namespace snawb::io {

std::pair<Dataset, AnonymizationMap> anonymize(const Dataset& dataset, const std::string& salt) {
  std::vector<std::pair<std::string, std::string>> order;  // (digest, id)
  for (const auto& ind : dataset.individuals()) {
    order.emplace_back(sha256_hex(salt + '\x1f' + ind.id), ind.id);
  }
  std::sort(order.begin(), order.end());

  const std::size_t width = std::max<std::size_t>(3, std::to_string(order.size()).size());
  AnonymizationMap map;
  map.salt = salt;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::string number = std::to_string(i + 1);
    number.insert(0, width - number.size(), '0');
    map.pseudonyms[order[i].second] = "S-" + number;
  }

  auto individuals = dataset.individuals();
  for (auto& ind : individuals) ind.display_name = map.pseudonyms.at(ind.id);
  Dataset anonymized(dataset.questionnaire(), std::move(individuals), dataset.responses(), true);
  map.dataset_id = anonymized.id();
  return {std::move(anonymized), std::move(map)};
}

std::string write_anonymization_map(const AnonymizationMap& map) {
  nlohmann::json doc = {{"dataset_id", map.dataset_id}, {"salt", map.salt}, {"pseudonyms", map.pseudonyms}};
  return doc.dump(2) + "\n";
}

AnonymizationMap parse_anonymization_map(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    AnonymizationMap map;
    map.dataset_id = doc.at("dataset_id").get<std::string>();
    map.salt = doc.at("salt").get<std::string>();
    map.pseudonyms = doc.at("pseudonyms").get<std::map<std::string, std::string>>();
    return map;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed anonymization map: ") + e.what());
  }
}

}  // namespace snawb::io
