#include "snawb/survey/validate.hpp"

#include <algorithm>

namespace snawb::survey {

std::string_view to_string(Severity severity) {
  return severity == Severity::error ? "error" : "warning";
}

bool has_errors(const ValidationReport& report) {
  return std::any_of(report.begin(), report.end(),
                     [](const ValidationIssue& issue) { return issue.severity == Severity::error; });
}

Roster::Roster(std::span<const Individual> individuals) {
  for (const auto& ind : individuals) by_id_.emplace(ind.id, ind);
}

const Individual* Roster::find(std::string_view id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &it->second;
}

bool Roster::in_scope(const Individual& respondent, const Individual& peer, RosterScope scope) const {
  if (scope == RosterScope::classroom) {
    return respondent.school_id == peer.school_id && respondent.classroom_id == peer.classroom_id;
  }
  return respondent.school_id == peer.school_id;
}

ValidationReport validate_response_set(const ResponseSet& rs, const Questionnaire& questionnaire,
                                       const Roster& roster) {
  if (rs.questionnaire_id != questionnaire.id()) {
    throw UnknownQuestionnaireError("response set for '" + rs.individual_id +
                                    "' names unknown questionnaire '" + rs.questionnaire_id + "'");
  }

  ValidationReport report;
  auto error = [&report](const std::string& qid, std::string message) {
    report.push_back({Severity::error, qid, std::move(message)});
  };

  const Individual* respondent = roster.find(rs.individual_id);
  if (respondent == nullptr) {
    error("", "respondent '" + rs.individual_id + "' is not in the roster");
  }

  for (const auto& [qid, option] : rs.choice_answers) {
    const auto* question = questionnaire.find_choice(qid);
    if (question == nullptr) {
      error(qid, "answer to unknown question '" + qid + "'");
      continue;
    }
    if (option < 0 || static_cast<std::size_t>(option) >= question->options.size()) {
      error(qid, "option index " + std::to_string(option) + " out of range for '" + qid + "'");
    }
  }

  for (const auto& [qid, nominations] : rs.roster_answers) {
    const auto* question = questionnaire.find_roster(qid);
    if (question == nullptr) {
      error(qid, "answer to unknown roster question '" + qid + "'");
      continue;
    }
    for (const auto& [peer_id, level] : nominations) {
      if (peer_id == rs.individual_id) {
        error(qid, "'" + peer_id + "' names themself");
        continue;
      }
      const auto* peer = roster.find(peer_id);
      if (peer == nullptr) {
        error(qid, "peer '" + peer_id + "' is not in the roster");
        continue;
      }
      if (respondent != nullptr && !roster.in_scope(*respondent, *peer, question->roster_scope)) {
        error(qid, "peer '" + peer_id + "' is outside the " +
                       std::string(to_string(question->roster_scope)) + " of '" + rs.individual_id + "'");
      }
      if (level < 0 || static_cast<std::size_t>(level) >= question->contact_levels.size()) {
        error(qid, "contact level " + std::to_string(level) + " out of range for peer '" + peer_id + "'");
      }
    }
  }

  for (const auto& question : questionnaire.choice_questions()) {
    if (!rs.choice_answers.contains(question.question_id)) {
      report.push_back({Severity::warning, question.question_id,
                        "question '" + question.question_id + "' unanswered"});
    }
  }
  return report;
}

}  // namespace snawb::survey
