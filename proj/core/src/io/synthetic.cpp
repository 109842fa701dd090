#include "snawb/io/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "snawb/error.hpp"
#include "snawb/survey/audit.hpp"

namespace snawb::io {

namespace {

// Standard distributions are implementation-defined; these helpers only use
// the engine's raw output so every platform draws the same values.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

const char* const kFirstNames[] = {"Aino",  "Eero",  "Helmi", "Onni",   "Lilja",  "Väinö", "Sofia", "Leo",
                                   "Ella",  "Elias", "Olivia", "Oliver", "Aada",  "Eino",  "Venla", "Niilo",
                                   "Isla",  "Toivo", "Kerttu", "Aleksi", "Pihla", "Juho",  "Siiri", "Mikael"};
const char* const kLastNames[] = {"Virtanen", "Korhonen", "Mäkinen", "Nieminen", "Mäkelä",   "Hämäläinen",
                                  "Laine",    "Heikkinen", "Koskinen", "Järvinen", "Lehtonen", "Lehtinen",
                                  "Saarinen", "Salminen",  "Heinonen", "Niemi",    "Heikkilä", "Kinnunen"};

std::string padded(int value, int width) {
  std::string text = std::to_string(value);
  if (static_cast<int>(text.size()) < width) text.insert(0, static_cast<std::size_t>(width) - text.size(), '0');
  return text;
}

survey::RosterQuestion drinking_companions_question() {
  auto q = survey::catalog::friendship_time_question("q_drink");
  q.text = "How often do you drink alcohol together with each of the following classmates?";
  return q;
}

survey::Questionnaire build_questionnaire(int lifestyle_items) {
  auto choices = survey::catalog::audit_questions();
  const int width = std::max(3, static_cast<int>(std::to_string(lifestyle_items).size()));
  for (int i = 1; i <= lifestyle_items; ++i) {
    choices.push_back({"lifestyle_" + padded(i, width),
                       "Lifestyle statement " + std::to_string(i),
                       {{"Strongly disagree", 0}, {"Disagree", 1}, {"Neutral", 2}, {"Agree", 3}, {"Strongly agree", 4}}});
  }
  return survey::Questionnaire("adolescent_survey", "Adolescent friendship and alcohol use (synthetic)",
                               std::move(choices),
                               {survey::catalog::friendship_time_question(), drinking_companions_question()},
                               survey::catalog::audit_instruments());
}

int level_index(int weight) { return std::clamp(weight, 1, 5) - 1; }

}  // namespace

SyntheticData generate_synthetic(const SyntheticOptions& options) {
  if (options.students < 1 || options.classrooms < 1 || options.schools < 1 ||
      options.classrooms > options.students || options.schools > options.classrooms || options.waves.empty()) {
    throw Error("synthetic data needs students >= classrooms >= schools >= 1 and at least one wave");
  }
  Draw draw(options.seed);

  const int n = options.students;
  const int id_width = std::max(3, static_cast<int>(std::to_string(n).size()));
  std::vector<survey::Individual> individuals;
  std::vector<int> classroom_of;
  const int base = n / options.classrooms;
  const int extra = n % options.classrooms;
  for (int c = 0, next = 1; c < options.classrooms; ++c) {
    const int size = base + (c < extra ? 1 : 0);
    for (int k = 0; k < size; ++k, ++next) {
      survey::Individual ind;
      ind.id = "s" + padded(next, id_width);
      const double g = draw.unit();
      ind.gender = g < 0.48 ? survey::Gender::male : g < 0.96 ? survey::Gender::female : survey::Gender::unspecified;
      ind.display_name = std::string(kFirstNames[draw.below(std::size(kFirstNames))]) + " " +
                         kLastNames[draw.below(std::size(kLastNames))];
      ind.classroom_id = "c" + std::to_string(c + 1);
      ind.school_id = "sch" + std::to_string(c * options.schools / options.classrooms + 1);
      individuals.push_back(std::move(ind));
      classroom_of.push_back(c);
    }
  }

  // Latent traits: drinking propensity per student, tie strength per pair.
  std::vector<double> propensity(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = draw.unit();
    const bool male = individuals[static_cast<std::size_t>(i)].gender == survey::Gender::male;
    propensity[static_cast<std::size_t>(i)] = std::min(1.0, u * u * (male ? 1.25 : 1.0));
  }
  std::vector<std::vector<int>> strength(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (classroom_of[static_cast<std::size_t>(i)] != classroom_of[static_cast<std::size_t>(j)]) continue;
      const double u = draw.unit();
      const int s = 1 + static_cast<int>(std::floor(5.0 * u * u));
      strength[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
      strength[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = s;
    }
  }

  const auto audit = survey::catalog::audit_questions();
  std::vector<survey::ResponseSet> responses;
  std::size_t nominations = 0;
  for (const auto& wave : options.waves) {
    for (int i = 0; i < n; ++i) {
      const auto& ind = individuals[static_cast<std::size_t>(i)];
      survey::ResponseSet rs;
      rs.individual_id = ind.id;
      rs.questionnaire_id = "adolescent_survey";
      rs.timestamp = wave;
      const double d = propensity[static_cast<std::size_t>(i)];
      for (const auto& q : audit) {
        const double u = std::clamp(d * (0.6 + 0.8 * draw.unit()), 0.0, 0.999);
        rs.choice_answers[q.question_id] = static_cast<int>(u * static_cast<double>(q.options.size()));
      }
      for (int j = 0; j < n; ++j) {
        const int s = strength[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (s == 0) continue;
        const auto& peer = individuals[static_cast<std::size_t>(j)].id;
        if (draw.chance(0.6)) {
          constexpr int kJitter[] = {-1, 0, 0, 1};
          rs.roster_answers["q_time"][peer] = level_index(s + kJitter[draw.below(4)]);
          ++nominations;
        }
        const double dj = propensity[static_cast<std::size_t>(j)];
        if (d > 0.35 && dj > 0.35 && s >= 3 && draw.chance(0.7)) {
          rs.roster_answers["q_drink"][peer] = level_index(static_cast<int>(1 + 4.0 * std::min(d, dj)));
          ++nominations;
        }
      }
      responses.push_back(std::move(rs));
    }
  }

  const std::size_t rows = responses.size();
  const std::size_t fixed = rows * audit.size() + nominations;
  int lifestyle = 20;
  std::size_t omit = 0;
  if (options.target_items > 0) {
    if (options.target_items < fixed) {
      throw Error("target_items " + std::to_string(options.target_items) + " is below the " + std::to_string(fixed) +
                  " items produced by AUDIT answers and nominations alone");
    }
    const std::size_t remaining = options.target_items - fixed;
    lifestyle = static_cast<int>((remaining + rows - 1) / rows);
    omit = rows * static_cast<std::size_t>(lifestyle) - remaining;
  }

  SyntheticData data{build_questionnaire(lifestyle), std::move(individuals), std::move(responses)};
  const std::size_t slots = rows * static_cast<std::size_t>(lifestyle);
  std::set<std::size_t> skipped;
  // Floyd's sampling of `omit` distinct slots out of `slots`.
  for (std::size_t j = slots - omit; j < slots; ++j) {
    const std::size_t t = draw.below(j + 1);
    if (!skipped.insert(t).second) skipped.insert(j);
  }
  const auto& choices = data.questionnaire.choice_questions();
  for (std::size_t r = 0; r < rows; ++r) {
    for (int k = 0; k < lifestyle; ++k) {
      const std::size_t slot = r * static_cast<std::size_t>(lifestyle) + static_cast<std::size_t>(k);
      const int answer = static_cast<int>(draw.below(5));
      if (skipped.count(slot) != 0) continue;
      data.responses[r].choice_answers[choices[audit.size() + static_cast<std::size_t>(k)].question_id] = answer;
    }
  }
  return data;
}

}  // namespace snawb::io
