#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "snawb/dsl/library.hpp"
#include "snawb/dsl/presets.hpp"
#include "snawb/io/dataset.hpp"
#include "snawb/network/raw_graph.hpp"
#include "snawb/survey/audit.hpp"

namespace snawb::testing {

inline std::string person_id(int i) {
  std::string s = std::to_string(i);
  return "p" + std::string(s.size() < 2 ? 2 - s.size() : 0, '0') + s;
}

inline survey::Individual person(int i, survey::Gender gender, std::string classroom = "c1") {
  return {person_id(i), "Name " + std::to_string(i), gender, std::move(classroom), "sch1"};
}

// Contact level index for a contact weight (1..5).
inline int level(int weight) { return weight - 1; }

// Builds a one-wave dataset on the core questionnaire. `audit` holds option
// indexes for audit_1..audit_10; absent entries leave a respondent's AUDIT
// unanswered. Arcs are (from, to) -> weight on q_time.
struct DatasetBuilder {
  std::vector<survey::Individual> people;
  std::map<std::string, std::array<int, 10>> audit;
  std::map<std::pair<std::string, std::string>, int> arcs;
  std::string wave = "w1";

  DatasetBuilder& add(survey::Individual ind, std::optional<std::array<int, 10>> answers = std::array<int, 10>{}) {
    if (answers) audit[ind.id] = *answers;
    people.push_back(std::move(ind));
    return *this;
  }

  DatasetBuilder& arc(const std::string& from, const std::string& to, int weight) {
    arcs[{from, to}] = weight;
    return *this;
  }

  DatasetBuilder& tie(const std::string& a, const std::string& b, int w_ab, int w_ba) {
    return arc(a, b, w_ab).arc(b, a, w_ba);
  }

  std::vector<survey::ResponseSet> responses() const {
    std::vector<survey::ResponseSet> out;
    for (const auto& p : people) {
      survey::ResponseSet rs;
      rs.individual_id = p.id;
      rs.questionnaire_id = "adolescent_survey";
      rs.timestamp = wave;
      if (auto it = audit.find(p.id); it != audit.end()) {
        for (int k = 0; k < 10; ++k) rs.choice_answers["audit_" + std::to_string(k + 1)] = it->second[k];
      }
      for (const auto& [key, w] : arcs) {
        if (key.first == p.id) rs.roster_answers["q_time"][key.second] = level(w);
      }
      out.push_back(std::move(rs));
    }
    return out;
  }

  std::shared_ptr<const io::Dataset> build() const {
    return std::make_shared<const io::Dataset>(survey::catalog::core_questionnaire(), people, responses(), false);
  }
};

// AUDIT answers with the AUDIT-C items summing to `audit_c` (0..12) and the
// other items at zero.
inline std::array<int, 10> audit_c_answers(int audit_c) {
  std::array<int, 10> a{};
  for (int k = 0; k < 3 && audit_c > 0; ++k) {
    a[static_cast<std::size_t>(k)] = std::min(4, audit_c);
    audit_c -= a[static_cast<std::size_t>(k)];
  }
  return a;
}

inline std::shared_ptr<const dsl::DefinitionsLibrary> library_from(std::string_view source,
                                                                   const survey::Questionnaire& schema) {
  auto built = dsl::DefinitionsLibrary::from_source(source, schema);
  if (!built.ok()) throw std::runtime_error("fixture library does not check: " + built.diagnostics.front().message);
  return std::make_shared<const dsl::DefinitionsLibrary>(std::move(*built.library));
}

inline std::shared_ptr<const dsl::DefinitionsLibrary> presets() {
  return library_from(dsl::preset_library_source(), survey::catalog::core_questionnaire());
}

// Random directed roster graph on q_time: every ordered pair independently
// present with probability `p`, weight uniform in 1..5.
inline net::RawRosterGraph random_roster(std::mt19937_64& rng, int n, double p) {
  std::vector<std::string> population;
  for (int i = 0; i < n; ++i) population.push_back(person_id(i));
  std::map<net::ArcKey, int> arcs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) {
        arcs[{population[static_cast<std::size_t>(i)], population[static_cast<std::size_t>(j)]}] =
            1 + static_cast<int>(rng() % 5);
      }
    }
  }
  return net::RawRosterGraph(population, arcs, "q_time", "w1", {1, 2, 3, 4, 5});
}

}  // namespace snawb::testing
