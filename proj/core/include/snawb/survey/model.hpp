#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace snawb::survey {

enum class Gender { male, female, unspecified };

std::string_view to_string(Gender gender);
std::optional<Gender> parse_gender(std::string_view text);

struct Individual {
  std::string id;
  std::string display_name;
  Gender gender = Gender::unspecified;
  std::string classroom_id;
  std::string school_id;

  friend bool operator==(const Individual&, const Individual&) = default;
};

struct ChoiceOption {
  std::string label;
  int score = 0;

  friend bool operator==(const ChoiceOption&, const ChoiceOption&) = default;
};

// A closed question whose options carry an integer score (Likert items,
// AUDIT rows, ...).
struct ScoredChoiceQuestion {
  std::string question_id;
  std::string text;
  std::vector<ChoiceOption> options;

  friend bool operator==(const ScoredChoiceQuestion&, const ScoredChoiceQuestion&) = default;
};

struct ContactLevel {
  std::string label;
  int weight = 1;

  friend bool operator==(const ContactLevel&, const ContactLevel&) = default;
};

enum class RosterScope { classroom, school };

std::string_view to_string(RosterScope scope);
std::optional<RosterScope> parse_roster_scope(std::string_view text);

// A network-generating question: the respondent rates their contact with
// every peer in scope on an ordered scale of weighted statements.
struct RosterQuestion {
  std::string question_id;
  std::string text;
  std::vector<ContactLevel> contact_levels;
  RosterScope roster_scope = RosterScope::classroom;

  std::vector<int> weights() const;

  friend bool operator==(const RosterQuestion&, const RosterQuestion&) = default;
};

enum class ScoringRule { sum_all, sum_subset };

struct Instrument {
  std::string instrument_id;
  std::vector<std::string> question_ids;
  ScoringRule scoring_rule = ScoringRule::sum_all;
  // Only meaningful for sum_subset.
  std::vector<std::string> subset;

  // The questions whose scores add up to the instrument total.
  const std::vector<std::string>& scored_questions() const {
    return scoring_rule == ScoringRule::sum_all ? question_ids : subset;
  }

  friend bool operator==(const Instrument&, const Instrument&) = default;
};

// One survey form. Immutable once loaded; the constructor throws Error when
// ids collide, instruments reference unknown questions or contact weights
// are not strictly increasing.
class Questionnaire {
 public:
  Questionnaire() = default;
  Questionnaire(std::string id, std::string title,
                std::vector<ScoredChoiceQuestion> choice_questions,
                std::vector<RosterQuestion> roster_questions,
                std::vector<Instrument> instruments);

  const std::string& id() const { return id_; }
  const std::string& title() const { return title_; }
  const std::vector<ScoredChoiceQuestion>& choice_questions() const { return choice_questions_; }
  const std::vector<RosterQuestion>& roster_questions() const { return roster_questions_; }
  const std::vector<Instrument>& instruments() const { return instruments_; }

  const ScoredChoiceQuestion* find_choice(std::string_view question_id) const;
  const RosterQuestion* find_roster(std::string_view question_id) const;
  const Instrument* find_instrument(std::string_view instrument_id) const;

  friend bool operator==(const Questionnaire&, const Questionnaire&) = default;

 private:
  std::string id_;
  std::string title_;
  std::vector<ScoredChoiceQuestion> choice_questions_;
  std::vector<RosterQuestion> roster_questions_;
  std::vector<Instrument> instruments_;
  std::map<std::string, std::size_t, std::less<>> choice_index_;
  std::map<std::string, std::size_t, std::less<>> roster_index_;
  std::map<std::string, std::size_t, std::less<>> instrument_index_;
};

// One individual's answers to one questionnaire in one wave. Timestamps are
// opaque wave labels.
struct ResponseSet {
  std::string individual_id;
  std::string questionnaire_id;
  std::string timestamp;
  // question id -> chosen option index
  std::map<std::string, int> choice_answers;
  // roster question id -> peer id -> contact level index
  std::map<std::string, std::map<std::string, int>> roster_answers;

  friend bool operator==(const ResponseSet&, const ResponseSet&) = default;
};

}  // namespace snawb::survey
