#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "snawb/grid/compare.hpp"
#include "snawb/grid/grid.hpp"
#include "snawb/dsl/diagnostic.hpp"
#include "snawb/grid/individual.hpp"
#include "snawb/io/diagnostics.hpp"

namespace snawb::io {

// Pretty-printed JSON with sorted keys; byte-identical for equal reports.
std::string report_to_json(const grid::AnalysisReport& report);
// Throws snawb::Error on malformed input.
grid::AnalysisReport report_from_json(std::string_view text);

std::string delta_to_json(const grid::DeltaReport& delta);
std::string individual_to_json(const grid::IndividualReport& report);

std::string summary_csv(const std::vector<grid::GridSummaryRow>& rows);
// One row per individual; columns follow `columns`.
std::string node_metrics_csv(const metrics::NodeMetricsTable& table, const std::vector<MetricKind>& columns);

// Materialized network with its shared layout and node metrics, as served
// to interactive clients.
std::string network_to_json(const grid::AnalysisSession& session, const std::string& relationship);
// Attribute value table and classification counts, optionally restricted
// to the tie mix of one network.
std::string attribute_to_json(const grid::AnalysisSession& session, const std::string& attribute,
                              const std::string& network = {});

// Single-line JSON objects, used for structured diagnostic output.
std::string diagnostic_to_json(const dsl::Diagnostic& diagnostic, std::string_view source_name);
std::string diagnostic_to_json(const FileDiagnostic& diagnostic);
std::string diagnostic_to_json(const grid::GridIssue& issue);

}  // namespace snawb::io
