#include "snawb/io/dataset.hpp"

#include <algorithm>
#include <set>

#include "snawb/hash.hpp"
#include "snawb/io/questionnaire_file.hpp"

namespace snawb::io {

Dataset::Dataset(survey::Questionnaire questionnaire, std::vector<survey::Individual> individuals,
                 std::vector<survey::ResponseSet> responses, bool anonymized)
    : questionnaire_(std::move(questionnaire)),
      individuals_(std::move(individuals)),
      responses_(std::move(responses)),
      anonymized_(anonymized) {
  std::sort(individuals_.begin(), individuals_.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(responses_.begin(), responses_.end(), [](const auto& a, const auto& b) {
    return std::tie(a.individual_id, a.timestamp) < std::tie(b.individual_id, b.timestamp);
  });

  ContentHasher hasher;
  hasher.field("dataset-v1").field(write_questionnaire(questionnaire_));
  hasher.field(static_cast<long long>(individuals_.size()));
  for (const auto& ind : individuals_) {
    hasher.field(ind.id).field(survey::to_string(ind.gender)).field(ind.classroom_id).field(ind.school_id);
  }
  hasher.field(static_cast<long long>(responses_.size()));
  for (const auto& rs : responses_) {
    hasher.field(rs.individual_id).field(rs.questionnaire_id).field(rs.timestamp);
    hasher.field(static_cast<long long>(rs.choice_answers.size()));
    for (const auto& [qid, option] : rs.choice_answers) hasher.field(qid).field(option);
    hasher.field(static_cast<long long>(rs.roster_answers.size()));
    for (const auto& [qid, nominations] : rs.roster_answers) {
      hasher.field(qid).field(static_cast<long long>(nominations.size()));
      for (const auto& [peer, level] : nominations) hasher.field(peer).field(level);
    }
  }
  content_hash_ = hasher.hex();
  id_ = "ds-" + content_hash_.substr(0, 12) + (anonymized_ ? "-anon" : "");
}

std::vector<std::string> Dataset::waves() const {
  std::set<std::string> waves;
  for (const auto& rs : responses_) waves.insert(rs.timestamp);
  return {waves.begin(), waves.end()};
}

const survey::Individual* Dataset::find_individual(std::string_view id) const {
  auto it = std::lower_bound(individuals_.begin(), individuals_.end(), id,
                             [](const survey::Individual& ind, std::string_view key) { return ind.id < key; });
  return it != individuals_.end() && it->id == id ? &*it : nullptr;
}

const survey::ResponseSet* Dataset::find_response(std::string_view individual_id, std::string_view wave) const {
  for (const auto& rs : responses_) {
    if (rs.individual_id == individual_id && rs.timestamp == wave) return &rs;
  }
  return nullptr;
}

std::vector<survey::ResponseSet> Dataset::responses_for_wave(std::string_view wave) const {
  std::vector<survey::ResponseSet> out;
  for (const auto& rs : responses_) {
    if (rs.timestamp == wave) out.push_back(rs);
  }
  return out;
}

std::size_t Dataset::answer_item_count() const {
  std::size_t total = 0;
  for (const auto& rs : responses_) {
    total += rs.choice_answers.size();
    for (const auto& [qid, nominations] : rs.roster_answers) total += nominations.size();
  }
  return total;
}

}  // namespace snawb::io
