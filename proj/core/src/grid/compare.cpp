#include "snawb/grid/compare.hpp"

#include <algorithm>
#include <iterator>

namespace snawb::grid {

DeltaReport compare(const AnalysisReport& from, const AnalysisReport& to) {
  if (from.genders != to.genders) {
    throw InputMismatchError("cannot compare " + from.cell_id + " and " + to.cell_id + ": populations differ");
  }
  if (from.wave != to.wave) {
    throw InputMismatchError("cannot compare " + from.cell_id + " (wave '" + from.wave + "') and " + to.cell_id +
                             " (wave '" + to.wave + "')");
  }

  DeltaReport delta;
  delta.from_cell = from.cell_id;
  delta.to_cell = to.cell_id;
  delta.counts_before = from.classification;
  delta.counts_after = to.classification;

  for (const auto& [id, before] : from.values) {
    const auto& after = to.values.at(id);
    const bool was = dsl::is_true(before);
    const bool is = dsl::is_true(after);
    if (is && !was) delta.newly_classified.push_back(id);
    if (was && !is) delta.no_longer_classified.push_back(id);
    if (before != after) delta.value_changes.push_back({id, before, after});
  }

  std::vector<MetricKind> shared;
  for (auto kind : from.metric_columns) {
    if (std::find(to.metric_columns.begin(), to.metric_columns.end(), kind) != to.metric_columns.end()) {
      shared.push_back(kind);
    }
  }
  for (const auto& [id, before] : from.node_metrics) {
    auto it = to.node_metrics.find(id);
    if (it == to.node_metrics.end()) continue;
    for (auto kind : shared) {
      const auto a = before.value(kind);
      const auto b = it->second.value(kind);
      if (a != b) delta.metric_deltas.push_back({id, kind, a, b});
    }
  }

  std::set_difference(to.edges.begin(), to.edges.end(), from.edges.begin(), from.edges.end(),
                      std::back_inserter(delta.edges_added));
  std::set_difference(from.edges.begin(), from.edges.end(), to.edges.begin(), to.edges.end(),
                      std::back_inserter(delta.edges_removed));
  return delta;
}

}  // namespace snawb::grid
