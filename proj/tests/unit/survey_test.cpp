#include <gtest/gtest.h>

#include "snawb/error.hpp"
#include "snawb/survey/audit.hpp"
#include "snawb/survey/scoring.hpp"
#include "snawb/survey/validate.hpp"
#include "support/fixtures.hpp"

namespace snawb::survey {
namespace {

// Scores for each option of each AUDIT item, copied from the instrument's
// published scoring table.
const std::vector<std::vector<int>> kAuditTable = {
    {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4},
    {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, {0, 2, 4},       {0, 2, 4},
};

ResponseSet answers(const std::vector<int>& options) {
  ResponseSet rs{"p00", "adolescent_survey", "w1", {}, {}};
  for (std::size_t k = 0; k < options.size(); ++k) {
    if (options[k] >= 0) rs.choice_answers["audit_" + std::to_string(k + 1)] = options[k];
  }
  return rs;
}

TEST(AuditCatalog, OptionScoresMatchPublishedTable) {
  const auto qs = catalog::audit_questions();
  ASSERT_EQ(qs.size(), 10u);
  for (std::size_t k = 0; k < qs.size(); ++k) {
    EXPECT_EQ(qs[k].question_id, "audit_" + std::to_string(k + 1));
    std::vector<int> scores;
    for (const auto& o : qs[k].options) scores.push_back(o.score);
    EXPECT_EQ(scores, kAuditTable[k]) << qs[k].question_id;
  }
}

TEST(AuditCatalog, FriendshipScaleWeightsOneToFive) {
  const auto q = catalog::friendship_time_question();
  EXPECT_EQ(q.question_id, "q_time");
  EXPECT_EQ(q.weights(), (std::vector<int>{1, 2, 3, 4, 5}));
  EXPECT_EQ(q.contact_levels.front().label, "We never spend time together.");
  EXPECT_EQ(q.contact_levels.back().label, "We are always together.");
  EXPECT_EQ(q.roster_scope, RosterScope::classroom);
}

TEST(Scoring, SingleAnswerEncodingsScoreTheirOption) {
  const auto q = catalog::core_questionnaire();
  const auto& audit = *q.find_instrument("audit");
  const auto& audit_c = *q.find_instrument("audit_c");
  for (std::size_t item = 0; item < 10; ++item) {
    for (std::size_t option = 0; option < kAuditTable[item].size(); ++option) {
      std::vector<int> opts(10, 0);
      opts[item] = static_cast<int>(option);
      const auto total = score_instrument(answers(opts), audit, q);
      EXPECT_FALSE(total.missing_data);
      EXPECT_EQ(total.score, kAuditTable[item][option]);
      const auto c = score_instrument(answers(opts), audit_c, q);
      EXPECT_EQ(c.score, item < 3 ? kAuditTable[item][option] : 0);
    }
  }
}

TEST(Scoring, MaximumAnswersGiveFortyAndTwelve) {
  const auto q = catalog::core_questionnaire();
  const auto all_max = answers({4, 4, 4, 4, 4, 4, 4, 4, 2, 2});
  EXPECT_EQ(score_instrument(all_max, *q.find_instrument("audit"), q).score, 40);
  EXPECT_EQ(score_instrument(all_max, *q.find_instrument("audit_c"), q).score, 12);
}

TEST(Scoring, MissingAnswerFlagsIncompleteScore) {
  const auto q = catalog::core_questionnaire();
  const auto s = score_instrument(answers({1, 2, -1, 0, 0, 0, 0, 0, 0, 0}), *q.find_instrument("audit_c"), q);
  EXPECT_TRUE(s.missing_data);
  EXPECT_EQ(s.score, 3);
  const auto full = score_instrument(answers({1, 2, 3}), *q.find_instrument("audit_c"), q);
  EXPECT_FALSE(full.missing_data);
  EXPECT_EQ(full.score, 6);
  EXPECT_TRUE(score_instrument(answers({1, 2, 3}), *q.find_instrument("audit"), q).missing_data);
}

TEST(Scoring, AnswerScoreUsesOptionScoreNotIndex) {
  const auto q = catalog::core_questionnaire();
  const auto rs = answers({0, 0, 0, 0, 0, 0, 0, 0, 1, 2});
  EXPECT_EQ(answer_score(rs, *q.find_choice("audit_9")), 2);
  EXPECT_EQ(answer_score(rs, *q.find_choice("audit_10")), 4);
  EXPECT_EQ(answer_score(answers({}), *q.find_choice("audit_1")), std::nullopt);
}

TEST(Scoring, RosterWeightDistinguishesAbsentFromLowest) {
  const auto q = catalog::friendship_time_question();
  ResponseSet a{"a", "x", "w1", {}, {{"q_time", {{"b", 0}}}}};
  ResponseSet b{"b", "x", "w1", {}, {}};
  const auto w = roster_weight(a, b, q);
  EXPECT_EQ(w.forward, 1);
  EXPECT_EQ(w.backward, std::nullopt);
}

TEST(Questionnaire, RejectsInconsistentDefinitions) {
  auto audit = catalog::audit_questions();
  auto dup = audit;
  dup.push_back(audit.front());
  EXPECT_THROW(Questionnaire("q", "", dup, {}, {}), Error);

  Instrument bad{"bad", {"missing_question"}, ScoringRule::sum_all, {}};
  EXPECT_THROW(Questionnaire("q", "", audit, {}, {bad}), Error);

  Instrument outside{"sub", {"audit_1"}, ScoringRule::sum_subset, {"audit_2"}};
  EXPECT_THROW(Questionnaire("q", "", audit, {}, {outside}), Error);

  auto roster = catalog::friendship_time_question();
  roster.contact_levels[2].weight = 2;
  EXPECT_THROW(Questionnaire("q", "", audit, {roster}, {}), Error);

  EXPECT_THROW(Questionnaire("", "", audit, {}, {}), Error);
}

TEST(Questionnaire, GenderAndScopeNamesRoundTrip) {
  for (auto g : {Gender::male, Gender::female, Gender::unspecified}) EXPECT_EQ(parse_gender(to_string(g)), g);
  EXPECT_EQ(parse_gender("M"), std::nullopt);
  for (auto s : {RosterScope::classroom, RosterScope::school}) EXPECT_EQ(parse_roster_scope(to_string(s)), s);
}

class ValidateTest : public ::testing::Test {
 protected:
  Questionnaire q = catalog::core_questionnaire();
  std::vector<Individual> people = {
      testing::person(0, Gender::male), testing::person(1, Gender::female),
      testing::person(2, Gender::female, "c2"),
  };
  Roster roster{people};

  ResponseSet complete(const std::string& id) {
    ResponseSet rs{id, "adolescent_survey", "w1", {}, {}};
    for (int k = 1; k <= 10; ++k) rs.choice_answers["audit_" + std::to_string(k)] = 0;
    return rs;
  }

  std::vector<std::string> errors(const ResponseSet& rs) {
    std::vector<std::string> out;
    for (const auto& issue : validate_response_set(rs, q, roster)) {
      if (issue.severity == Severity::error) out.push_back(issue.message);
    }
    return out;
  }
};

TEST_F(ValidateTest, CleanResponseHasNoIssues) {
  auto rs = complete("p00");
  rs.roster_answers["q_time"]["p01"] = 4;
  EXPECT_TRUE(validate_response_set(rs, q, roster).empty());
}

TEST_F(ValidateTest, UnansweredQuestionIsWarningOnly) {
  auto rs = complete("p00");
  rs.choice_answers.erase("audit_4");
  const auto report = validate_response_set(rs, q, roster);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].severity, Severity::warning);
  EXPECT_EQ(report[0].question_id, "audit_4");
  EXPECT_FALSE(has_errors(report));
}

TEST_F(ValidateTest, EachInconsistencyIsAnError) {
  auto rs = complete("p00");
  rs.choice_answers["audit_9"] = 3;            // only three options
  rs.choice_answers["nonexistent"] = 0;        // unknown question
  rs.roster_answers["q_time"]["p00"] = 0;      // self
  rs.roster_answers["q_time"]["p99"] = 0;      // not on roster
  rs.roster_answers["q_time"]["p02"] = 0;      // other classroom
  rs.roster_answers["q_time"]["p01"] = 5;      // level out of range
  EXPECT_EQ(errors(rs).size(), 6u);

  auto stranger = complete("zz");
  EXPECT_EQ(errors(stranger).size(), 1u);
}

TEST_F(ValidateTest, ForeignQuestionnaireThrows) {
  auto rs = complete("p00");
  rs.questionnaire_id = "other";
  EXPECT_THROW(validate_response_set(rs, q, roster), UnknownQuestionnaireError);
}

}  // namespace
}  // namespace snawb::survey
