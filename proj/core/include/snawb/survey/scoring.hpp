#pragma once

#include <optional>
#include <utility>

#include "snawb/survey/model.hpp"

namespace snawb::survey {

struct InstrumentScore {
  int score = 0;
  // True when at least one scored question was left unanswered; the score
  // then covers the answered subset only.
  bool missing_data = false;

  friend bool operator==(const InstrumentScore&, const InstrumentScore&) = default;
};

InstrumentScore score_instrument(const ResponseSet& rs, const Instrument& instrument,
                                 const Questionnaire& questionnaire);

// Score of the option chosen for one question, if answered.
std::optional<int> answer_score(const ResponseSet& rs, const ScoredChoiceQuestion& question);

struct RosterWeights {
  std::optional<int> forward;   // weight a gave b
  std::optional<int> backward;  // weight b gave a

  friend bool operator==(const RosterWeights&, const RosterWeights&) = default;
};

// Contact weights the two respondents recorded for each other on `question`.
// Absence means no choice was recorded, which is distinct from the lowest
// contact level.
RosterWeights roster_weight(const ResponseSet& a, const ResponseSet& b, const RosterQuestion& question);

}  // namespace snawb::survey
