#pragma once

#include <map>
#include <string>
#include <vector>

#include "snawb/grid/grid.hpp"

namespace snawb::grid {

struct ValueChange {
  std::string individual_id;
  dsl::AttributeValue before;
  dsl::AttributeValue after;

  friend bool operator==(const ValueChange&, const ValueChange&) = default;
};

struct MetricDelta {
  std::string individual_id;
  MetricKind metric = MetricKind::degree;
  MetricValue before;
  MetricValue after;

  friend bool operator==(const MetricDelta&, const MetricDelta&) = default;
};

// What changes between two cells of a grid (or two runs on one population).
struct DeltaReport {
  std::string from_cell;
  std::string to_cell;
  // Classified in `to` but not in `from`, and the reverse.
  std::vector<std::string> newly_classified;
  std::vector<std::string> no_longer_classified;
  std::map<std::string, ClassificationCounts> counts_before;
  std::map<std::string, ClassificationCounts> counts_after;
  std::vector<ValueChange> value_changes;
  std::vector<MetricDelta> metric_deltas;
  std::vector<net::Edge> edges_added;
  std::vector<net::Edge> edges_removed;

  friend bool operator==(const DeltaReport&, const DeltaReport&) = default;
};

// Throws InputMismatchError when the reports cover different populations or
// waves. Metric deltas cover the metrics both reports computed.
DeltaReport compare(const AnalysisReport& from, const AnalysisReport& to);

}  // namespace snawb::grid
