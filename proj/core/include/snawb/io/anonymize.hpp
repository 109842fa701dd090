#pragma once

#include <map>
#include <string>
#include <utility>

#include "snawb/io/dataset.hpp"

namespace snawb::io {

struct AnonymizationMap {
  std::string dataset_id;
  std::string salt;
  std::map<std::string, std::string> pseudonyms;  // individual id -> pseudonym
};

// Replaces every display name with "S-<n>", numbering individuals in the
// order of SHA-256(salt, id). Deterministic for a given (ids, salt). Store the
// returned map apart from the anonymized dataset.
std::pair<Dataset, AnonymizationMap> anonymize(const Dataset& dataset, const std::string& salt);

std::string write_anonymization_map(const AnonymizationMap& map);
AnonymizationMap parse_anonymization_map(std::string_view text);

}  // namespace snawb::io
