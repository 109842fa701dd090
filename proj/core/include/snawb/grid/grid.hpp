#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "snawb/dsl/evaluate.hpp"
#include "snawb/error.hpp"
#include "snawb/grid/session.hpp"
#include "snawb/metric_kind.hpp"

namespace snawb::grid {

// One sensitivity analysis: every listed relationship crossed with every
// listed attribute on one roster question and wave.
struct GridSpec {
  std::string wave;
  std::string roster_question;
  std::vector<std::string> relationships;
  std::vector<std::string> attributes;
  // Empty means all metrics.
  std::vector<MetricKind> metrics;
  std::uint64_t layout_seed = 1;
};

struct GridIssue {
  std::string name;
  std::string message;
};

// Raised before any cell runs; lists every problem found in the spec.
class GridSpecError : public Error {
 public:
  explicit GridSpecError(std::vector<GridIssue> issues);
  const std::vector<GridIssue>& issues() const { return issues_; }

 private:
  std::vector<GridIssue> issues_;
};

// For boolean attributes: true, false and unevaluable individuals. For
// numeric attributes every evaluable individual counts as classified.
struct ClassificationCounts {
  int classified = 0;
  int not_classified = 0;
  int not_evaluable = 0;

  friend bool operator==(const ClassificationCounts&, const ClassificationCounts&) = default;
};

// Edges by how many endpoints are classified.
struct TieMix {
  int both = 0;
  int one = 0;
  int neither = 0;

  friend bool operator==(const TieMix&, const TieMix&) = default;
};

struct AnalysisReport {
  std::string cell_id;
  std::string relationship;
  std::string attribute;
  std::string wave;
  std::string roster_question;
  std::string dataset_hash;
  std::uint64_t layout_seed = 0;

  std::string relationship_text;
  net::Provenance provenance;
  std::set<net::Edge> edges;
  metrics::NetworkMetrics network_summary;
  std::vector<MetricKind> metric_columns;
  metrics::NodeMetricsTable node_metrics;

  std::string attribute_text;
  std::string attribute_hash;
  dsl::ResultType attribute_type = dsl::ResultType::boolean;
  std::map<std::string, dsl::AttributeValue> values;
  std::map<std::string, survey::Gender> genders;
  // Keyed by "male", "female", "unspecified" and "total".
  std::map<std::string, ClassificationCounts> classification;
  TieMix tie_mix;
  // Provenance hashes of the networks the attribute reads through metric().
  std::map<std::string, std::string> attribute_inputs;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

// Throws GridSpecError listing every problem. Definitions are re-checked
// against the dataset's questionnaire.
void validate_grid(const io::Dataset& dataset, const dsl::DefinitionsLibrary& library, const GridSpec& spec);

struct GridOptions {
  // 0 picks the hardware concurrency.
  unsigned threads = 0;
  // Called once per finished cell, from a worker thread.
  std::function<void(std::size_t index, const AnalysisReport&)> on_cell;
  // Called when a cell fails; the run continues with the other cells and
  // the failed cell's report is left empty.
  std::function<void(std::size_t index, const std::string& message)> on_error;
};

// Reports ordered by relationship, then attribute, as listed in the spec.
// Deterministic: identical inputs give identical reports in any schedule.
std::vector<AnalysisReport> run_grid(std::shared_ptr<const io::Dataset> dataset,
                                     std::shared_ptr<const dsl::DefinitionsLibrary> library, const GridSpec& spec,
                                     const GridOptions& options = {});

// One cell computed from an existing session.
AnalysisReport analyze_cell(const AnalysisSession& session, const std::string& relationship,
                            const std::string& attribute, const std::vector<MetricKind>& metrics);

// Per-gender and total counts of one attribute over the session population.
std::map<std::string, ClassificationCounts> classification_counts(const AnalysisSession& session,
                                                                  const std::string& attribute);

std::string cell_id(const std::string& dataset_hash, const std::string& relationship_hash,
                    const std::string& attribute_hash, const std::string& wave, std::uint64_t layout_seed);

struct GridSummaryRow {
  std::string cell_id;
  std::string relationship;
  std::string attribute;
  std::size_t edge_count = 0;
  double density = 0.0;
  std::size_t component_count = 0;
  std::size_t isolate_count = 0;
  ClassificationCounts total;
  ClassificationCounts male;
  ClassificationCounts female;
  TieMix tie_mix;
};

std::vector<GridSummaryRow> summarize_grid(const std::vector<AnalysisReport>& reports);

}  // namespace snawb::grid
