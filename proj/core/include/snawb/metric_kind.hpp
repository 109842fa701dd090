#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

namespace snawb {

// Per-node measures addressable from attribute definitions via metric(net, name).
enum class MetricKind {
  degree,
  in_degree,
  out_degree,
  weighted_in_degree,
  betweenness,
  closeness,
  component_id,
};

inline constexpr std::array<MetricKind, 7> kAllMetricKinds = {
    MetricKind::degree,      MetricKind::in_degree,   MetricKind::out_degree,
    MetricKind::weighted_in_degree, MetricKind::betweenness,
    MetricKind::closeness,   MetricKind::component_id,
};

using MetricValue = std::variant<std::int64_t, double>;

constexpr std::string_view metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::degree: return "degree";
    case MetricKind::in_degree: return "in_degree";
    case MetricKind::out_degree: return "out_degree";
    case MetricKind::weighted_in_degree: return "weighted_in_degree";
    case MetricKind::betweenness: return "betweenness";
    case MetricKind::closeness: return "closeness";
    case MetricKind::component_id: return "component_id";
  }
  return "unknown";
}

constexpr bool metric_is_real(MetricKind kind) {
  return kind == MetricKind::betweenness || kind == MetricKind::closeness;
}

constexpr std::optional<MetricKind> parse_metric_name(std::string_view name) {
  for (auto kind : kAllMetricKinds) {
    if (metric_name(kind) == name) return kind;
  }
  return std::nullopt;
}

}  // namespace snawb
