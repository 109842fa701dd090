#include "snawb/survey/audit.hpp"

namespace snawb::survey::catalog {

namespace {

ScoredChoiceQuestion five_point(std::string id, std::string text, std::vector<std::string> labels) {
  ScoredChoiceQuestion q{std::move(id), std::move(text), {}};
  for (int score = 0; score < static_cast<int>(labels.size()); ++score) {
    q.options.push_back({labels[static_cast<std::size_t>(score)], score});
  }
  return q;
}

const std::vector<std::string> kFrequency = {"Never", "Less than monthly", "Monthly", "Weekly",
                                             "Daily or almost daily"};

}  // namespace

std::vector<ScoredChoiceQuestion> audit_questions() {
  std::vector<ScoredChoiceQuestion> qs;
  qs.push_back(five_point("audit_1", "How often do you have a drink containing alcohol?",
                          {"Never", "Monthly or less", "2-4 times a month", "2-3 times a week",
                           "4 or more times a week"}));
  qs.push_back(five_point("audit_2",
                          "How many drinks containing alcohol do you have on a typical day when you are drinking?",
                          {"0-2", "3 or 4", "5 or 6", "7-9", "10 or more"}));
  qs.push_back(five_point("audit_3", "How often do you have four or more drinks on one occasion?", kFrequency));
  qs.push_back(five_point("audit_4",
                          "How often during the last year have you found that you were not able to stop "
                          "drinking once you had started?",
                          kFrequency));
  qs.push_back(five_point("audit_5",
                          "How often during the last year have you failed to do what was normally expected "
                          "of you because of drinking?",
                          kFrequency));
  qs.push_back(five_point("audit_6",
                          "How often during the last year have you needed a first drink in the morning to "
                          "get yourself going after a heavy drinking session?",
                          kFrequency));
  qs.push_back(five_point("audit_7",
                          "How often during the last year have you had a feeling of guilt or remorse after "
                          "drinking?",
                          kFrequency));
  qs.push_back(five_point("audit_8",
                          "How often during the last year have you been unable to remember what happened "
                          "the night before because of your drinking?",
                          kFrequency));
  qs.push_back({"audit_9",
                "Have you or someone else been injured because of your drinking?",
                {{"No", 0}, {"Yes, but not in the last year", 2}, {"Yes, in the last year", 4}}});
  qs.push_back({"audit_10",
                "Has a relative, friend, doctor, or other health care worker been concerned about your "
                "drinking or suggested you cut down?",
                {{"No", 0}, {"Yes, but not in the last year", 2}, {"Yes, in the last year", 4}}});
  return qs;
}

std::vector<Instrument> audit_instruments() {
  std::vector<std::string> all;
  for (int i = 1; i <= 10; ++i) all.push_back("audit_" + std::to_string(i));
  return {
      {"audit", all, ScoringRule::sum_all, {}},
      {"audit_c", all, ScoringRule::sum_subset, {"audit_1", "audit_2", "audit_3"}},
  };
}

RosterQuestion friendship_time_question(std::string question_id) {
  return {std::move(question_id),
          "How much time do you spend with each of the following classmates?",
          {
              {"We never spend time together.", 1},
              {"We sometimes spend time together.", 2},
              {"We spend quite a lot of time together.", 3},
              {"We are almost always together.", 4},
              {"We are always together.", 5},
          },
          RosterScope::classroom};
}

Questionnaire core_questionnaire(std::string id) {
  return Questionnaire(std::move(id), "Adolescent friendship and alcohol use", audit_questions(),
                       {friendship_time_question()}, audit_instruments());
}

}  // namespace snawb::survey::catalog
