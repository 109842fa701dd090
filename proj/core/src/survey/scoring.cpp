#include "snawb/survey/scoring.hpp"

#include "snawb/error.hpp"

namespace snawb::survey {

std::optional<int> answer_score(const ResponseSet& rs, const ScoredChoiceQuestion& question) {
  auto it = rs.choice_answers.find(question.question_id);
  if (it == rs.choice_answers.end()) return std::nullopt;
  const int index = it->second;
  if (index < 0 || static_cast<std::size_t>(index) >= question.options.size()) {
    throw Error("option index " + std::to_string(index) + " out of range for '" + question.question_id + "'");
  }
  return question.options[static_cast<std::size_t>(index)].score;
}

InstrumentScore score_instrument(const ResponseSet& rs, const Instrument& instrument,
                                 const Questionnaire& questionnaire) {
  InstrumentScore result;
  for (const auto& qid : instrument.scored_questions()) {
    const auto* question = questionnaire.find_choice(qid);
    if (question == nullptr) {
      throw NotFoundError("instrument '" + instrument.instrument_id + "' references question '" + qid +
                          "' absent from questionnaire '" + questionnaire.id() + "'");
    }
    if (auto score = answer_score(rs, *question)) {
      result.score += *score;
    } else {
      result.missing_data = true;
    }
  }
  return result;
}

namespace {

std::optional<int> weight_for(const ResponseSet& from, const std::string& to, const RosterQuestion& question) {
  auto answers = from.roster_answers.find(question.question_id);
  if (answers == from.roster_answers.end()) return std::nullopt;
  auto level = answers->second.find(to);
  if (level == answers->second.end()) return std::nullopt;
  const int index = level->second;
  if (index < 0 || static_cast<std::size_t>(index) >= question.contact_levels.size()) {
    throw Error("contact level " + std::to_string(index) + " out of range for '" + question.question_id + "'");
  }
  return question.contact_levels[static_cast<std::size_t>(index)].weight;
}

}  // namespace

RosterWeights roster_weight(const ResponseSet& a, const ResponseSet& b, const RosterQuestion& question) {
  return {weight_for(a, b.individual_id, question), weight_for(b, a.individual_id, question)};
}

}  // namespace snawb::survey
