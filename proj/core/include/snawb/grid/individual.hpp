#pragma once

#include <map>
#include <string>
#include <vector>

#include "snawb/grid/session.hpp"

namespace snawb::grid {

struct InstrumentResult {
  int score = 0;
  bool missing_data = false;
};

struct NetworkPosition {
  metrics::NodeMetrics metrics;
  std::vector<std::string> neighbours;
};

struct IndividualReport {
  survey::Individual individual;
  std::string wave;
  bool responded = false;
  std::map<std::string, InstrumentResult> instruments;
  std::map<std::string, NetworkPosition> networks;
  std::map<std::string, dsl::AttributeValue> attributes;
};

// Throws NotFoundError for an unknown individual, relationship or attribute.
IndividualReport individual_report(const AnalysisSession& session, const std::string& individual_id,
                                   const std::vector<std::string>& relationships,
                                   const std::vector<std::string>& attributes);

}  // namespace snawb::grid
