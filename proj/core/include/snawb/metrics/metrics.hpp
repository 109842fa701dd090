#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snawb/metric_kind.hpp"
#include "snawb/network/derived.hpp"
#include "snawb/network/raw_graph.hpp"

namespace snawb::metrics {

struct NodeMetrics {
  std::string individual_id;
  std::string network;
  int degree = 0;
  // The three nomination counts always come from the raw roster graph, also
  // when the record describes a derived network.
  int in_degree = 0;
  int out_degree = 0;
  int weighted_in_degree = 0;
  double betweenness = 0.0;  // normalized to [0, 1]
  double closeness = 0.0;    // harmonic, in [0, 1]
  int component_id = 0;

  MetricValue value(MetricKind kind) const;

  friend bool operator==(const NodeMetrics&, const NodeMetrics&) = default;
};

using NodeMetricsTable = std::map<std::string, NodeMetrics>;

struct NetworkMetrics {
  std::string network;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double density = 0.0;
  // Only defined for raw (directed) graphs.
  std::optional<double> reciprocity_rate;
  std::size_t component_count = 0;
  std::size_t isolate_count = 0;

  friend bool operator==(const NetworkMetrics&, const NetworkMetrics&) = default;
};

// Index-based adjacency used by the path algorithms. For undirected graphs
// every edge appears in both endpoint lists.
struct AdjacencyGraph {
  std::size_t node_count = 0;
  bool directed = false;
  std::vector<std::vector<std::size_t>> out;

  static AdjacencyGraph undirected(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  static AdjacencyGraph directed_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& arcs);
};

// Exact Brandes dependency accumulation. Normalized by (n-1)(n-2)/2 for
// undirected graphs and (n-1)(n-2) for directed ones; 0 when n < 3.
std::vector<double> betweenness(const AdjacencyGraph& graph, bool normalized = true);

// Sum over other nodes of 1/distance (unreachable contributes 0), divided by n-1.
std::vector<double> harmonic_closeness(const AdjacencyGraph& graph);

// Weakly connected components, labelled 0.. in order of lowest member index.
std::vector<int> component_labels(const AdjacencyGraph& graph);

NodeMetricsTable node_metrics(const net::RawRosterGraph& raw);
NodeMetricsTable node_metrics(const net::DerivedNetwork& network, const net::RawRosterGraph& source);

NetworkMetrics network_metrics(const net::RawRosterGraph& raw);
NetworkMetrics network_metrics(const net::DerivedNetwork& network);

// Fraction of arcs whose reverse arc exists; 0 for a graph without arcs.
double reciprocity_rate(const net::RawRosterGraph& raw);

}  // namespace snawb::metrics
