#include "snawb/io/report_json.hpp"

#include <charconv>
#include <json.hpp>

#include "snawb/error.hpp"

namespace snawb::io {

using nlohmann::json;

namespace {

json value_json(const dsl::AttributeValue& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, dsl::NotEvaluable>) {
          return nullptr;
        } else {
          return x;
        }
      },
      v);
}

dsl::AttributeValue value_from(const json& j, dsl::ResultType type) {
  if (j.is_null()) return dsl::NotEvaluable{};
  switch (type) {
    case dsl::ResultType::boolean: return j.get<bool>();
    case dsl::ResultType::integer: return j.get<std::int64_t>();
    case dsl::ResultType::real: return j.get<double>();
  }
  return dsl::NotEvaluable{};
}

json metric_json(const MetricValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return std::get<double>(v);
}

dsl::ResultType parse_type(const std::string& text) {
  if (text == "bool") return dsl::ResultType::boolean;
  if (text == "int") return dsl::ResultType::integer;
  if (text == "real") return dsl::ResultType::real;
  throw Error("unknown attribute type '" + text + "'");
}

json counts_json(const grid::ClassificationCounts& c) {
  return {{"classified", c.classified}, {"not_classified", c.not_classified}, {"not_evaluable", c.not_evaluable}};
}

grid::ClassificationCounts counts_from(const json& j) {
  return {j.at("classified").get<int>(), j.at("not_classified").get<int>(), j.at("not_evaluable").get<int>()};
}

json classification_json(const std::map<std::string, grid::ClassificationCounts>& m) {
  json out = json::object();
  for (const auto& [k, c] : m) out[k] = counts_json(c);
  return out;
}

json edges_json(const auto& edges) {
  json out = json::array();
  for (const auto& [a, b] : edges) out.push_back({a, b});
  return out;
}

json network_summary_json(const metrics::NetworkMetrics& m) {
  json out = {{"network", m.network},
              {"node_count", m.node_count},
              {"edge_count", m.edge_count},
              {"density", m.density},
              {"component_count", m.component_count},
              {"isolate_count", m.isolate_count}};
  out["reciprocity_rate"] = m.reciprocity_rate ? json(*m.reciprocity_rate) : json(nullptr);
  return out;
}

metrics::NetworkMetrics network_summary_from(const json& j) {
  metrics::NetworkMetrics m;
  m.network = j.at("network").get<std::string>();
  m.node_count = j.at("node_count").get<std::size_t>();
  m.edge_count = j.at("edge_count").get<std::size_t>();
  m.density = j.at("density").get<double>();
  m.component_count = j.at("component_count").get<std::size_t>();
  m.isolate_count = j.at("isolate_count").get<std::size_t>();
  if (!j.at("reciprocity_rate").is_null()) m.reciprocity_rate = j["reciprocity_rate"].get<double>();
  return m;
}

json node_metrics_json(const metrics::NodeMetrics& m, const std::vector<MetricKind>& columns) {
  json out = json::object();
  for (auto kind : columns) out[std::string(metric_name(kind))] = metric_json(m.value(kind));
  return out;
}

void set_metric(metrics::NodeMetrics& m, MetricKind kind, const json& v) {
  switch (kind) {
    case MetricKind::degree: m.degree = v.get<int>(); break;
    case MetricKind::in_degree: m.in_degree = v.get<int>(); break;
    case MetricKind::out_degree: m.out_degree = v.get<int>(); break;
    case MetricKind::weighted_in_degree: m.weighted_in_degree = v.get<int>(); break;
    case MetricKind::betweenness: m.betweenness = v.get<double>(); break;
    case MetricKind::closeness: m.closeness = v.get<double>(); break;
    case MetricKind::component_id: m.component_id = v.get<int>(); break;
  }
}

std::string csv_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string report_to_json(const grid::AnalysisReport& r) {
  json doc;
  doc["cell_id"] = r.cell_id;
  doc["relationship"] = r.relationship;
  doc["attribute"] = r.attribute;
  doc["wave"] = r.wave;
  doc["roster_question"] = r.roster_question;
  doc["dataset_hash"] = r.dataset_hash;
  doc["layout_seed"] = r.layout_seed;

  doc["network"] = {{"definition", r.relationship_text},
                    {"provenance",
                     {{"definition_hash", r.provenance.definition_hash},
                      {"input_hash", r.provenance.input_hash},
                      {"hash", r.provenance.hash}}},
                    {"edges", edges_json(r.edges)},
                    {"summary", network_summary_json(r.network_summary)}};

  json columns = json::array();
  for (auto kind : r.metric_columns) columns.push_back(std::string(metric_name(kind)));
  doc["metric_columns"] = columns;

  doc["attribute_definition"] = {{"name", r.attribute},
                                 {"definition", r.attribute_text},
                                 {"hash", r.attribute_hash},
                                 {"type", std::string(dsl::to_string(r.attribute_type))},
                                 {"inputs", r.attribute_inputs}};

  json nodes = json::object();
  for (const auto& [id, gender] : r.genders) {
    json node = {{"gender", std::string(survey::to_string(gender))}};
    auto v = r.values.find(id);
    node["value"] = v == r.values.end() ? json(nullptr) : value_json(v->second);
    auto m = r.node_metrics.find(id);
    if (m != r.node_metrics.end()) node["metrics"] = node_metrics_json(m->second, r.metric_columns);
    nodes[id] = std::move(node);
  }
  doc["nodes"] = std::move(nodes);
  doc["classification"] = classification_json(r.classification);
  doc["tie_mix"] = {{"both", r.tie_mix.both}, {"one", r.tie_mix.one}, {"neither", r.tie_mix.neither}};
  return doc.dump(2) + "\n";
}

grid::AnalysisReport report_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    grid::AnalysisReport r;
    r.cell_id = doc.at("cell_id").get<std::string>();
    r.relationship = doc.at("relationship").get<std::string>();
    r.attribute = doc.at("attribute").get<std::string>();
    r.wave = doc.at("wave").get<std::string>();
    r.roster_question = doc.at("roster_question").get<std::string>();
    r.dataset_hash = doc.at("dataset_hash").get<std::string>();
    r.layout_seed = doc.at("layout_seed").get<std::uint64_t>();

    const auto& network = doc.at("network");
    r.relationship_text = network.at("definition").get<std::string>();
    const auto& prov = network.at("provenance");
    r.provenance = {prov.at("definition_hash").get<std::string>(), prov.at("input_hash").get<std::string>(),
                    prov.at("hash").get<std::string>()};
    for (const auto& e : network.at("edges")) r.edges.insert(net::make_edge(e.at(0), e.at(1)));
    r.network_summary = network_summary_from(network.at("summary"));

    for (const auto& c : doc.at("metric_columns")) {
      auto kind = parse_metric_name(c.get<std::string>());
      if (!kind) throw Error("unknown metric column " + c.dump());
      r.metric_columns.push_back(*kind);
    }

    const auto& attr = doc.at("attribute_definition");
    r.attribute_text = attr.at("definition").get<std::string>();
    r.attribute_hash = attr.at("hash").get<std::string>();
    r.attribute_type = parse_type(attr.at("type").get<std::string>());
    r.attribute_inputs = attr.at("inputs").get<std::map<std::string, std::string>>();

    for (const auto& [id, node] : doc.at("nodes").items()) {
      auto gender = survey::parse_gender(node.at("gender").get<std::string>());
      if (!gender) throw Error("node '" + id + "' has an unknown gender");
      r.genders[id] = *gender;
      r.values[id] = value_from(node.at("value"), r.attribute_type);
      if (node.contains("metrics")) {
        metrics::NodeMetrics m;
        m.individual_id = id;
        m.network = r.network_summary.network;
        for (auto kind : r.metric_columns) set_metric(m, kind, node["metrics"].at(std::string(metric_name(kind))));
        r.node_metrics[id] = m;
      }
    }
    for (const auto& [k, c] : doc.at("classification").items()) r.classification[k] = counts_from(c);
    const auto& mix = doc.at("tie_mix");
    r.tie_mix = {mix.at("both").get<int>(), mix.at("one").get<int>(), mix.at("neither").get<int>()};
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed analysis report: ") + e.what());
  }
}

std::string delta_to_json(const grid::DeltaReport& d) {
  json doc;
  doc["from_cell"] = d.from_cell;
  doc["to_cell"] = d.to_cell;
  doc["newly_classified"] = d.newly_classified;
  doc["no_longer_classified"] = d.no_longer_classified;
  doc["counts_before"] = classification_json(d.counts_before);
  doc["counts_after"] = classification_json(d.counts_after);
  json changes = json::array();
  for (const auto& c : d.value_changes) {
    changes.push_back({{"individual_id", c.individual_id}, {"before", value_json(c.before)}, {"after", value_json(c.after)}});
  }
  doc["value_changes"] = std::move(changes);
  json deltas = json::array();
  for (const auto& m : d.metric_deltas) {
    deltas.push_back({{"individual_id", m.individual_id},
                      {"metric", std::string(metric_name(m.metric))},
                      {"before", metric_json(m.before)},
                      {"after", metric_json(m.after)}});
  }
  doc["metric_deltas"] = std::move(deltas);
  doc["edges_added"] = edges_json(d.edges_added);
  doc["edges_removed"] = edges_json(d.edges_removed);
  return doc.dump(2) + "\n";
}

std::string individual_to_json(const grid::IndividualReport& r) {
  json doc;
  doc["individual_id"] = r.individual.id;
  doc["display_name"] = r.individual.display_name;
  doc["gender"] = std::string(survey::to_string(r.individual.gender));
  doc["classroom_id"] = r.individual.classroom_id;
  doc["school_id"] = r.individual.school_id;
  doc["wave"] = r.wave;
  doc["responded"] = r.responded;
  json instruments = json::object();
  for (const auto& [id, s] : r.instruments) instruments[id] = {{"score", s.score}, {"missing_data", s.missing_data}};
  doc["instruments"] = std::move(instruments);
  json networks = json::object();
  for (const auto& [name, p] : r.networks) {
    networks[name] = {{"metrics", node_metrics_json(p.metrics, {kAllMetricKinds.begin(), kAllMetricKinds.end()})},
                      {"neighbours", p.neighbours}};
  }
  doc["networks"] = std::move(networks);
  json attributes = json::object();
  for (const auto& [name, v] : r.attributes) attributes[name] = value_json(v);
  doc["attributes"] = std::move(attributes);
  return doc.dump(2) + "\n";
}

std::string summary_csv(const std::vector<grid::GridSummaryRow>& rows) {
  std::string out =
      "cell_id,relationship,attribute,edges,density,components,isolates,"
      "classified,not_classified,not_evaluable,classified_male,classified_female,"
      "ties_both,ties_one,ties_neither\n";
  for (const auto& r : rows) {
    out += r.cell_id + ',' + r.relationship + ',' + r.attribute + ',' + std::to_string(r.edge_count) + ',' +
           csv_double(r.density) + ',' + std::to_string(r.component_count) + ',' + std::to_string(r.isolate_count) +
           ',' + std::to_string(r.total.classified) + ',' + std::to_string(r.total.not_classified) + ',' +
           std::to_string(r.total.not_evaluable) + ',' + std::to_string(r.male.classified) + ',' +
           std::to_string(r.female.classified) + ',' + std::to_string(r.tie_mix.both) + ',' +
           std::to_string(r.tie_mix.one) + ',' + std::to_string(r.tie_mix.neither) + '\n';
  }
  return out;
}

std::string node_metrics_csv(const metrics::NodeMetricsTable& table, const std::vector<MetricKind>& columns) {
  std::string out = "individual_id";
  for (auto kind : columns) out += ',' + std::string(metric_name(kind));
  out += '\n';
  for (const auto& [id, m] : table) {
    out += id;
    for (auto kind : columns) {
      const auto v = m.value(kind);
      out += ',';
      if (const auto* i = std::get_if<std::int64_t>(&v)) {
        out += std::to_string(*i);
      } else {
        out += csv_double(std::get<double>(v));
      }
    }
    out += '\n';
  }
  return out;
}

std::string network_to_json(const grid::AnalysisSession& session, const std::string& relationship) {
  const auto& m = session.network(relationship);
  const auto& layout = session.layout(m.network.question_id);
  json doc;
  doc["network"] = {{"name", m.network.name},
                    {"definition", m.network.definition_text},
                    {"question_id", m.network.question_id},
                    {"wave", m.network.wave},
                    {"provenance",
                     {{"definition_hash", m.network.provenance.definition_hash},
                      {"input_hash", m.network.provenance.input_hash},
                      {"hash", m.network.provenance.hash}}},
                    {"edges", edges_json(m.network.edges)}};
  doc["summary"] = network_summary_json(m.summary);
  json coordinates = json::object();
  for (const auto& [id, p] : layout.coordinates) coordinates[id] = {{"x", p.x}, {"y", p.y}};
  doc["layout"] = {{"seed", layout.seed}, {"coordinates", std::move(coordinates)}};
  json nodes = json::object();
  const std::vector<MetricKind> all(kAllMetricKinds.begin(), kAllMetricKinds.end());
  for (const auto& [id, metrics] : m.nodes) {
    nodes[id] = {{"gender", std::string(survey::to_string(session.individual(id).gender))},
                 {"metrics", node_metrics_json(metrics, all)}};
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

std::string attribute_to_json(const grid::AnalysisSession& session, const std::string& attribute,
                              const std::string& network) {
  const auto* attr = session.library().find_attribute(attribute);
  if (attr == nullptr) throw NotFoundError("unknown attribute '" + attribute + "'");
  json doc;
  doc["attribute"] = {{"name", attribute},
                      {"definition", attr->canonical_text},
                      {"hash", attr->hash},
                      {"type", std::string(dsl::to_string(attr->definition.result_type))}};
  doc["wave"] = session.wave();
  json values = json::object();
  for (const auto& [id, v] : session.attribute(attribute)) values[id] = value_json(v);
  doc["values"] = std::move(values);
  doc["classification"] = classification_json(grid::classification_counts(session, attribute));
  if (network.empty()) {
    doc["network"] = nullptr;
  } else {
    const auto cell = grid::analyze_cell(session, network, attribute, {});
    doc["network"] = {{"name", network},
                      {"provenance_hash", cell.provenance.hash},
                      {"tie_mix", {{"both", cell.tie_mix.both}, {"one", cell.tie_mix.one}, {"neither", cell.tie_mix.neither}}}};
  }
  return doc.dump(2) + "\n";
}

std::string diagnostic_to_json(const dsl::Diagnostic& d, std::string_view source_name) {
  json doc = {{"source", source_name},
              {"code", std::string(dsl::to_string(d.code))},
              {"message", d.message},
              {"definition", d.definition},
              {"expected", d.expected},
              {"span",
               {{"begin", {{"line", d.span.begin.line}, {"column", d.span.begin.column}}},
                {"end", {{"line", d.span.end.line}, {"column", d.span.end.column}}}}}};
  return doc.dump();
}

std::string diagnostic_to_json(const FileDiagnostic& d) {
  json doc = {{"severity", d.severity},
              {"source", d.source},
              {"row", d.row},
              {"question_id", d.question_id},
              {"message", d.message}};
  return doc.dump();
}

std::string diagnostic_to_json(const grid::GridIssue& issue) {
  json doc = {{"name", issue.name}, {"message", issue.message}};
  return doc.dump();
}

}  // namespace snawb::io
