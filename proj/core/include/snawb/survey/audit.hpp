#pragma once

#include <vector>

#include "snawb/survey/model.hpp"

namespace snawb::survey::catalog {

// The ten AUDIT items with their per-response scores. Items 9 and 10 only
// offer the 0/2/4 responses.
std::vector<ScoredChoiceQuestion> audit_questions();

// "audit" (all ten items) and "audit_c" (items 1-3).
std::vector<Instrument> audit_instruments();

// "How much time do you spend with each of the following classmates?" on the
// five-statement weighted scale.
RosterQuestion friendship_time_question(std::string question_id = "q_time");

// Questionnaire with the friendship roster question and the AUDIT.
Questionnaire core_questionnaire(std::string id = "adolescent_survey");

}  // namespace snawb::survey::catalog
