#include "snawb/survey/model.hpp"

#include <set>
#include <sstream>

#include "snawb/error.hpp"

namespace snawb::survey {

std::string_view to_string(Gender gender) {
  switch (gender) {
    case Gender::male: return "male";
    case Gender::female: return "female";
    case Gender::unspecified: return "unspecified";
  }
  return "unspecified";
}

std::optional<Gender> parse_gender(std::string_view text) {
  if (text == "male") return Gender::male;
  if (text == "female") return Gender::female;
  if (text == "unspecified") return Gender::unspecified;
  return std::nullopt;
}

std::string_view to_string(RosterScope scope) {
  return scope == RosterScope::classroom ? "classroom" : "school";
}

std::optional<RosterScope> parse_roster_scope(std::string_view text) {
  if (text == "classroom") return RosterScope::classroom;
  if (text == "school") return RosterScope::school;
  return std::nullopt;
}

std::vector<int> RosterQuestion::weights() const {
  std::vector<int> out;
  out.reserve(contact_levels.size());
  for (const auto& level : contact_levels) out.push_back(level.weight);
  return out;
}

namespace {

void check_choice(const ScoredChoiceQuestion& q, std::vector<std::string>& problems) {
  if (q.options.size() < 2) {
    problems.push_back("question '" + q.question_id + "' needs at least two options");
  }
  std::set<std::string> labels;
  for (const auto& option : q.options) {
    if (option.score < 0) {
      problems.push_back("question '" + q.question_id + "' option '" + option.label +
                         "' has a negative score");
    }
    if (!labels.insert(option.label).second) {
      problems.push_back("question '" + q.question_id + "' repeats option label '" + option.label + "'");
    }
  }
}

void check_roster(const RosterQuestion& q, std::vector<std::string>& problems) {
  if (q.contact_levels.empty()) {
    problems.push_back("roster question '" + q.question_id + "' has no contact levels");
  }
  int previous = 0;
  for (const auto& level : q.contact_levels) {
    if (level.weight < 1) {
      problems.push_back("roster question '" + q.question_id + "' has a weight below 1");
    } else if (level.weight <= previous) {
      problems.push_back("roster question '" + q.question_id + "' weights are not strictly increasing");
    }
    previous = level.weight;
  }
}

}  // namespace

Questionnaire::Questionnaire(std::string id, std::string title,
                             std::vector<ScoredChoiceQuestion> choice_questions,
                             std::vector<RosterQuestion> roster_questions,
                             std::vector<Instrument> instruments)
    : id_(std::move(id)),
      title_(std::move(title)),
      choice_questions_(std::move(choice_questions)),
      roster_questions_(std::move(roster_questions)),
      instruments_(std::move(instruments)) {
  std::vector<std::string> problems;
  if (id_.empty()) problems.emplace_back("questionnaire id is empty");

  std::set<std::string, std::less<>> question_ids;
  for (std::size_t i = 0; i < choice_questions_.size(); ++i) {
    const auto& q = choice_questions_[i];
    check_choice(q, problems);
    if (!question_ids.insert(q.question_id).second) {
      problems.push_back("duplicate question id '" + q.question_id + "'");
    }
    choice_index_.emplace(q.question_id, i);
  }
  for (std::size_t i = 0; i < roster_questions_.size(); ++i) {
    const auto& q = roster_questions_[i];
    check_roster(q, problems);
    if (!question_ids.insert(q.question_id).second) {
      problems.push_back("duplicate question id '" + q.question_id + "'");
    }
    roster_index_.emplace(q.question_id, i);
  }
  for (std::size_t i = 0; i < instruments_.size(); ++i) {
    const auto& inst = instruments_[i];
    if (!instrument_index_.emplace(inst.instrument_id, i).second) {
      problems.push_back("duplicate instrument id '" + inst.instrument_id + "'");
    }
    for (const auto& qid : inst.question_ids) {
      if (!choice_index_.contains(qid)) {
        problems.push_back("instrument '" + inst.instrument_id + "' references '" + qid +
                           "', which is not a scored choice question");
      }
    }
    if (inst.scoring_rule == ScoringRule::sum_subset) {
      std::set<std::string> members(inst.question_ids.begin(), inst.question_ids.end());
      for (const auto& qid : inst.subset) {
        if (!members.contains(qid)) {
          problems.push_back("instrument '" + inst.instrument_id + "' scores '" + qid +
                             "' outside its question list");
        }
      }
    }
  }

  if (!problems.empty()) {
    std::ostringstream message;
    message << "invalid questionnaire '" << id_ << "':";
    for (const auto& p : problems) message << "\n  " << p;
    throw Error(message.str());
  }
}

const ScoredChoiceQuestion* Questionnaire::find_choice(std::string_view question_id) const {
  auto it = choice_index_.find(question_id);
  return it == choice_index_.end() ? nullptr : &choice_questions_[it->second];
}

const RosterQuestion* Questionnaire::find_roster(std::string_view question_id) const {
  auto it = roster_index_.find(question_id);
  return it == roster_index_.end() ? nullptr : &roster_questions_[it->second];
}

const Instrument* Questionnaire::find_instrument(std::string_view instrument_id) const {
  auto it = instrument_index_.find(instrument_id);
  return it == instrument_index_.end() ? nullptr : &instruments_[it->second];
}

}  // namespace snawb::survey
