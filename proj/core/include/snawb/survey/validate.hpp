#pragma once

#include <span>
#include <string>
#include <vector>

#include "snawb/error.hpp"
#include "snawb/survey/model.hpp"

namespace snawb::survey {

enum class Severity { error, warning };

std::string_view to_string(Severity severity);

struct ValidationIssue {
  Severity severity = Severity::error;
  std::string question_id;
  std::string message;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

using ValidationReport = std::vector<ValidationIssue>;

bool has_errors(const ValidationReport& report);

// Thrown when a response set names a questionnaire other than the one given.
class UnknownQuestionnaireError : public NotFoundError {
 public:
  using NotFoundError::NotFoundError;
};

// The peers a respondent may name. Built once per dataset.
class Roster {
 public:
  explicit Roster(std::span<const Individual> individuals);

  const Individual* find(std::string_view id) const;
  bool in_scope(const Individual& respondent, const Individual& peer, RosterScope scope) const;

 private:
  std::map<std::string, Individual, std::less<>> by_id_;
};

// Checks every ResponseSet invariant. Missing choice answers are warnings;
// anything that would make the data inconsistent (unknown question, option
// out of range, self-nomination, peer outside roster scope) is an error.
ValidationReport validate_response_set(const ResponseSet& rs, const Questionnaire& questionnaire,
                                       const Roster& roster);

}  // namespace snawb::survey
