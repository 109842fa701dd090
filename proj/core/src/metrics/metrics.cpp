#include "snawb/metrics/metrics.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace snawb::metrics {

MetricValue NodeMetrics::value(MetricKind kind) const {
  switch (kind) {
    case MetricKind::degree: return std::int64_t{degree};
    case MetricKind::in_degree: return std::int64_t{in_degree};
    case MetricKind::out_degree: return std::int64_t{out_degree};
    case MetricKind::weighted_in_degree: return std::int64_t{weighted_in_degree};
    case MetricKind::betweenness: return betweenness;
    case MetricKind::closeness: return closeness;
    case MetricKind::component_id: return std::int64_t{component_id};
  }
  return std::int64_t{0};
}

AdjacencyGraph AdjacencyGraph::undirected(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  AdjacencyGraph g{n, false, std::vector<std::vector<std::size_t>>(n)};
  for (const auto& [a, b] : edges) {
    g.out[a].push_back(b);
    g.out[b].push_back(a);
  }
  for (auto& list : g.out) std::sort(list.begin(), list.end());
  return g;
}

AdjacencyGraph AdjacencyGraph::directed_graph(std::size_t n,
                                              const std::vector<std::pair<std::size_t, std::size_t>>& arcs) {
  AdjacencyGraph g{n, true, std::vector<std::vector<std::size_t>>(n)};
  for (const auto& [a, b] : arcs) g.out[a].push_back(b);
  for (auto& list : g.out) std::sort(list.begin(), list.end());
  return g;
}

std::vector<double> betweenness(const AdjacencyGraph& graph, bool normalized) {
  const std::size_t n = graph.node_count;
  std::vector<double> centrality(n, 0.0);
  if (n < 3) return centrality;

  std::vector<std::vector<std::size_t>> predecessors(n);
  std::vector<double> sigma(n);
  std::vector<long> dist(n);
  std::vector<double> delta(n);
  std::vector<std::size_t> order;
  order.reserve(n);
  std::deque<std::size_t> queue;

  for (std::size_t s = 0; s < n; ++s) {
    for (auto& p : predecessors) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();

    sigma[s] = 1.0;
    dist[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (std::size_t w : graph.out[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          predecessors[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t w = *it;
      for (std::size_t v : predecessors[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) centrality[w] += delta[w];
    }
  }

  // Each unordered pair was counted from both ends.
  if (!graph.directed) {
    for (auto& c : centrality) c /= 2.0;
  }
  if (normalized) {
    const double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2) / (graph.directed ? 1.0 : 2.0);
    for (auto& c : centrality) c /= pairs;
  }
  return centrality;
}

std::vector<double> harmonic_closeness(const AdjacencyGraph& graph) {
  const std::size_t n = graph.node_count;
  std::vector<double> closeness(n, 0.0);
  if (n < 2) return closeness;
  std::vector<long> dist(n);
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    queue.push_back(s);
    double total = 0.0;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      if (v != s) total += 1.0 / static_cast<double>(dist[v]);
      for (std::size_t w : graph.out[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    closeness[s] = total / static_cast<double>(n - 1);
  }
  return closeness;
}

std::vector<int> component_labels(const AdjacencyGraph& graph) {
  const std::size_t n = graph.node_count;
  std::vector<std::vector<std::size_t>> neighbours(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : graph.out[v]) {
      neighbours[v].push_back(w);
      if (graph.directed) neighbours[w].push_back(v);
    }
  }
  std::vector<int> label(n, -1);
  int next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (label[start] >= 0) continue;
    label[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : neighbours[v]) {
        if (label[w] < 0) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> arc_indices(const net::RawRosterGraph& raw) {
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  arcs.reserve(raw.arcs().size());
  for (const auto& [key, weight] : raw.arcs()) arcs.emplace_back(raw.index_of(key.first), raw.index_of(key.second));
  return arcs;
}

AdjacencyGraph derived_adjacency(const net::DerivedNetwork& network, const std::map<std::string, std::size_t>& index) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(network.edges.size());
  for (const auto& [a, b] : network.edges) edges.emplace_back(index.at(a), index.at(b));
  return AdjacencyGraph::undirected(network.population.size(), edges);
}

// In/out/weighted-in counts from the raw roster nominations.
void fill_nominations(const net::RawRosterGraph& raw, NodeMetricsTable& table) {
  for (const auto& [key, weight] : raw.arcs()) {
    auto from = table.find(key.first);
    auto to = table.find(key.second);
    if (from != table.end()) ++from->second.out_degree;
    if (to != table.end()) {
      ++to->second.in_degree;
      to->second.weighted_in_degree += weight;
    }
  }
}

}  // namespace

NodeMetricsTable node_metrics(const net::RawRosterGraph& raw) {
  const auto& pop = raw.population();
  const std::string network = "raw:" + raw.question_id();
  const AdjacencyGraph graph = AdjacencyGraph::directed_graph(pop.size(), arc_indices(raw));
  const auto between = betweenness(graph);
  const auto close = harmonic_closeness(graph);
  const auto components = component_labels(graph);

  std::vector<std::set<std::size_t>> neighbours(pop.size());
  for (std::size_t v = 0; v < pop.size(); ++v) {
    for (std::size_t w : graph.out[v]) {
      neighbours[v].insert(w);
      neighbours[w].insert(v);
    }
  }

  NodeMetricsTable table;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    NodeMetrics m;
    m.individual_id = pop[i];
    m.network = network;
    m.degree = static_cast<int>(neighbours[i].size());
    m.betweenness = between[i];
    m.closeness = close[i];
    m.component_id = components[i];
    table.emplace(pop[i], std::move(m));
  }
  fill_nominations(raw, table);
  return table;
}

NodeMetricsTable node_metrics(const net::DerivedNetwork& network, const net::RawRosterGraph& source) {
  const auto& pop = network.population;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < pop.size(); ++i) index.emplace(pop[i], i);
  const AdjacencyGraph graph = derived_adjacency(network, index);
  const auto between = betweenness(graph);
  const auto close = harmonic_closeness(graph);
  const auto components = component_labels(graph);

  NodeMetricsTable table;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    NodeMetrics m;
    m.individual_id = pop[i];
    m.network = network.name;
    m.degree = static_cast<int>(graph.out[i].size());
    m.betweenness = between[i];
    m.closeness = close[i];
    m.component_id = components[i];
    table.emplace(pop[i], std::move(m));
  }
  fill_nominations(source, table);
  return table;
}

double reciprocity_rate(const net::RawRosterGraph& raw) {
  if (raw.arcs().empty()) return 0.0;
  std::size_t mutual = 0;
  for (const auto& [key, weight] : raw.arcs()) {
    if (raw.arcs().contains({key.second, key.first})) ++mutual;
  }
  return static_cast<double>(mutual) / static_cast<double>(raw.arcs().size());
}

namespace {

std::pair<std::size_t, std::size_t> components_and_isolates(const AdjacencyGraph& graph) {
  const auto labels = component_labels(graph);
  std::vector<std::size_t> sizes;
  for (int label : labels) {
    if (static_cast<std::size_t>(label) >= sizes.size()) sizes.resize(static_cast<std::size_t>(label) + 1, 0);
    ++sizes[static_cast<std::size_t>(label)];
  }
  const auto isolates = static_cast<std::size_t>(std::count(sizes.begin(), sizes.end(), std::size_t{1}));
  return {sizes.size(), isolates};
}

}  // namespace

NetworkMetrics network_metrics(const net::RawRosterGraph& raw) {
  NetworkMetrics m;
  m.network = "raw:" + raw.question_id();
  m.node_count = raw.population().size();
  m.edge_count = raw.arcs().size();
  const double n = static_cast<double>(m.node_count);
  m.density = m.node_count >= 2 ? static_cast<double>(m.edge_count) / (n * (n - 1.0)) : 0.0;
  m.reciprocity_rate = reciprocity_rate(raw);
  std::tie(m.component_count, m.isolate_count) =
      components_and_isolates(AdjacencyGraph::directed_graph(raw.population().size(), arc_indices(raw)));
  return m;
}

NetworkMetrics network_metrics(const net::DerivedNetwork& network) {
  NetworkMetrics m;
  m.network = network.name;
  m.node_count = network.population.size();
  m.edge_count = network.edges.size();
  const double n = static_cast<double>(m.node_count);
  m.density = m.node_count >= 2 ? 2.0 * static_cast<double>(m.edge_count) / (n * (n - 1.0)) : 0.0;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < network.population.size(); ++i) index.emplace(network.population[i], i);
  std::tie(m.component_count, m.isolate_count) = components_and_isolates(derived_adjacency(network, index));
  return m;
}

}  // namespace snawb::metrics
