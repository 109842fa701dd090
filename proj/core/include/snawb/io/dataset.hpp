#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snawb/survey/model.hpp"

namespace snawb::io {

// A validated, immutable collection of responses to one questionnaire.
class Dataset {
 public:
  // Sorts individuals by id and responses by (individual, wave), then hashes.
  Dataset(survey::Questionnaire questionnaire, std::vector<survey::Individual> individuals,
          std::vector<survey::ResponseSet> responses, bool anonymized);

  const std::string& id() const { return id_; }
  const survey::Questionnaire& questionnaire() const { return questionnaire_; }
  const std::vector<survey::Individual>& individuals() const { return individuals_; }
  const std::vector<survey::ResponseSet>& responses() const { return responses_; }
  bool anonymized() const { return anonymized_; }

  // Covers the questionnaire, every response and the analytic fields of
  // every individual (id, gender, classroom, school). Display names are
  // excluded so anonymization leaves it unchanged.
  const std::string& content_hash() const { return content_hash_; }

  std::vector<std::string> waves() const;
  const survey::Individual* find_individual(std::string_view id) const;
  const survey::ResponseSet* find_response(std::string_view individual_id, std::string_view wave) const;
  std::vector<survey::ResponseSet> responses_for_wave(std::string_view wave) const;

  // Number of recorded answer items: answered choice questions plus roster
  // nominations.
  std::size_t answer_item_count() const;

 private:
  survey::Questionnaire questionnaire_;
  std::vector<survey::Individual> individuals_;
  std::vector<survey::ResponseSet> responses_;
  bool anonymized_ = false;
  std::string content_hash_;
  std::string id_;
};

}  // namespace snawb::io
