#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "snawb/survey/model.hpp"

namespace snawb::io {

struct SyntheticOptions {
  std::uint64_t seed = 20240501;
  int students = 214;
  int classrooms = 9;
  int schools = 3;
  std::vector<std::string> waves = {"w1"};
  // Exact number of answer items (answered choice questions plus roster
  // nominations) over all waves. 0 keeps every choice question answered.
  std::size_t target_items = 145520;
};

struct SyntheticData {
  survey::Questionnaire questionnaire;
  std::vector<survey::Individual> individuals;
  std::vector<survey::ResponseSet> responses;
};

// The core questionnaire (AUDIT, q_time) plus a drinking-companion roster
// question and a bank of 5-point lifestyle items sized to hit target_items.
// AUDIT items are always answered; lifestyle items absorb the shortfall.
// Deterministic for a given options value on every platform.
SyntheticData generate_synthetic(const SyntheticOptions& options);

}  // namespace snawb::io
