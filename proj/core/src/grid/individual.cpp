#include "snawb/grid/individual.hpp"

#include <algorithm>

#include "snawb/error.hpp"
#include "snawb/survey/scoring.hpp"

namespace snawb::grid {

IndividualReport individual_report(const AnalysisSession& session, const std::string& individual_id,
                                   const std::vector<std::string>& relationships,
                                   const std::vector<std::string>& attributes) {
  IndividualReport report;
  report.individual = session.individual(individual_id);
  report.wave = session.wave();

  const auto* rs = session.response(individual_id);
  report.responded = rs != nullptr;
  static const survey::ResponseSet kNoAnswers{};
  const auto& questionnaire = session.dataset().questionnaire();
  for (const auto& instrument : questionnaire.instruments()) {
    const auto s = survey::score_instrument(rs != nullptr ? *rs : kNoAnswers, instrument, questionnaire);
    report.instruments[instrument.instrument_id] = {s.score, s.missing_data};
  }

  for (const auto& name : relationships) {
    const auto& m = session.network(name);
    NetworkPosition position{m.nodes.at(individual_id), {}};
    for (const auto& [a, b] : m.network.edges) {
      if (a == individual_id) position.neighbours.push_back(b);
      if (b == individual_id) position.neighbours.push_back(a);
    }
    std::sort(position.neighbours.begin(), position.neighbours.end());
    report.networks.emplace(name, std::move(position));
  }
  for (const auto& name : attributes) report.attributes[name] = session.attribute(name).at(individual_id);
  return report;
}

}  // namespace snawb::grid
