#include "snawb/grid/grid.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <thread>

#include "snawb/hash.hpp"

namespace snawb::grid {

namespace {

std::string join_messages(const std::vector<GridIssue>& issues) {
  std::string text = "invalid grid specification:";
  for (const auto& issue : issues) {
    text += "\n  " + (issue.name.empty() ? std::string() : issue.name + ": ") + issue.message;
  }
  return text;
}

std::vector<MetricKind> metric_columns(const std::vector<MetricKind>& requested) {
  if (requested.empty()) return {kAllMetricKinds.begin(), kAllMetricKinds.end()};
  std::vector<MetricKind> out;
  for (auto kind : kAllMetricKinds) {
    if (std::find(requested.begin(), requested.end(), kind) != requested.end()) out.push_back(kind);
  }
  return out;
}

// Unrequested columns are zeroed so a report round-trips through its file form.
void keep_columns(metrics::NodeMetrics& m, const std::vector<MetricKind>& columns) {
  auto keep = [&](MetricKind k) { return std::find(columns.begin(), columns.end(), k) != columns.end(); };
  if (!keep(MetricKind::degree)) m.degree = 0;
  if (!keep(MetricKind::in_degree)) m.in_degree = 0;
  if (!keep(MetricKind::out_degree)) m.out_degree = 0;
  if (!keep(MetricKind::weighted_in_degree)) m.weighted_in_degree = 0;
  if (!keep(MetricKind::betweenness)) m.betweenness = 0.0;
  if (!keep(MetricKind::closeness)) m.closeness = 0.0;
  if (!keep(MetricKind::component_id)) m.component_id = 0;
}

void check_definition(const dsl::Definition& def, const dsl::DefinitionsLibrary& library,
                      const survey::Questionnaire& schema, std::vector<GridIssue>& issues) {
  auto result = dsl::type_check(def, library, schema);
  for (const auto& d : result.diagnostics) {
    issues.push_back({dsl::definition_name(def), d.message});
  }
}

}  // namespace

GridSpecError::GridSpecError(std::vector<GridIssue> issues)
    : Error(join_messages(issues)), issues_(std::move(issues)) {}

void validate_grid(const io::Dataset& dataset, const dsl::DefinitionsLibrary& library, const GridSpec& spec) {
  std::vector<GridIssue> issues;
  const auto& schema = dataset.questionnaire();

  const auto waves = dataset.waves();
  if (std::find(waves.begin(), waves.end(), spec.wave) == waves.end()) {
    issues.push_back({"", "dataset has no wave '" + spec.wave + "'"});
  }
  if (schema.find_roster(spec.roster_question) == nullptr) {
    issues.push_back({"", "questionnaire has no roster question '" + spec.roster_question + "'"});
  }
  if (spec.relationships.empty()) issues.push_back({"", "no relationships listed"});
  if (spec.attributes.empty()) issues.push_back({"", "no attributes listed"});

  std::set<std::string> seen;
  for (const auto& name : spec.relationships) {
    if (!seen.insert("rel:" + name).second) {
      issues.push_back({name, "listed more than once"});
      continue;
    }
    const auto* rel = library.find_relationship(name);
    if (rel == nullptr) {
      issues.push_back({name, library.contains(name) ? "is an attribute, not a relationship" : "unknown relationship"});
      continue;
    }
    if (rel->definition.roster_question_id != spec.roster_question) {
      issues.push_back({name, "is defined on roster question '" + rel->definition.roster_question_id +
                                  "', not '" + spec.roster_question + "'"});
    }
    check_definition(rel->definition, library, schema, issues);
  }
  for (const auto& name : spec.attributes) {
    if (!seen.insert("attr:" + name).second) {
      issues.push_back({name, "listed more than once"});
      continue;
    }
    const auto* attr = library.find_attribute(name);
    if (attr == nullptr) {
      issues.push_back({name, library.contains(name) ? "is a relationship, not an attribute" : "unknown attribute"});
      continue;
    }
    for (const auto& dep : library.attribute_closure(name)) {
      check_definition(library.find_attribute(dep)->definition, library, schema, issues);
    }
    for (const auto& net : library.networks_for_attribute(name)) {
      if (const auto* rel = library.find_relationship(net)) check_definition(rel->definition, library, schema, issues);
    }
  }
  if (!issues.empty()) throw GridSpecError(std::move(issues));
}

std::string cell_id(const std::string& dataset_hash, const std::string& relationship_hash,
                    const std::string& attribute_hash, const std::string& wave, std::uint64_t layout_seed) {
  ContentHasher h;
  h.field("grid-cell")
      .field(dataset_hash)
      .field(relationship_hash)
      .field(attribute_hash)
      .field(wave)
      .field(static_cast<long long>(layout_seed));
  return "cell-" + h.hex().substr(0, 16);
}

std::map<std::string, ClassificationCounts> classification_counts(const AnalysisSession& session,
                                                                  const std::string& attribute) {
  const auto* attr = session.library().find_attribute(attribute);
  if (attr == nullptr) throw NotFoundError("unknown attribute '" + attribute + "'");
  const bool boolean = attr->definition.result_type == dsl::ResultType::boolean;
  std::map<std::string, ClassificationCounts> counts;
  for (const char* key : {"male", "female", "unspecified", "total"}) counts[key] = {};
  for (const auto& [id, value] : session.attribute(attribute)) {
    const auto gender = session.individual(id).gender;
    for (auto* c : {&counts[std::string(survey::to_string(gender))], &counts["total"]}) {
      if (std::holds_alternative<dsl::NotEvaluable>(value)) {
        ++c->not_evaluable;
      } else if (!boolean || dsl::is_true(value)) {
        ++c->classified;
      } else {
        ++c->not_classified;
      }
    }
  }
  return counts;
}

AnalysisReport analyze_cell(const AnalysisSession& session, const std::string& relationship,
                            const std::string& attribute, const std::vector<MetricKind>& metrics) {
  const auto& library = session.library();
  const auto* rel = library.find_relationship(relationship);
  const auto* attr = library.find_attribute(attribute);
  if (rel == nullptr) throw NotFoundError("unknown relationship '" + relationship + "'");
  if (attr == nullptr) throw NotFoundError("unknown attribute '" + attribute + "'");

  const auto& network = session.network(relationship);
  const auto& table = session.attribute(attribute);

  AnalysisReport report;
  report.relationship = relationship;
  report.attribute = attribute;
  report.wave = session.wave();
  report.roster_question = rel->definition.roster_question_id;
  report.dataset_hash = session.dataset().content_hash();
  report.layout_seed = session.layout_seed();
  report.cell_id = cell_id(report.dataset_hash, rel->hash, attr->hash, report.wave, report.layout_seed);

  report.relationship_text = rel->canonical_text;
  report.provenance = network.network.provenance;
  report.edges = network.network.edges;
  report.network_summary = network.summary;
  report.metric_columns = metric_columns(metrics);
  report.node_metrics = network.nodes;
  for (auto& [id, m] : report.node_metrics) keep_columns(m, report.metric_columns);

  report.attribute_text = attr->canonical_text;
  report.attribute_hash = attr->hash;
  report.attribute_type = attr->definition.result_type;
  report.values = table;
  for (const auto& net : library.networks_for_attribute(attribute)) {
    report.attribute_inputs[net] = session.network(net).network.provenance.hash;
  }

  for (const auto& [id, value] : table) report.genders[id] = session.individual(id).gender;
  report.classification = classification_counts(session, attribute);
  for (const auto& [a, b] : report.edges) {
    const int n = (dsl::is_true(table.at(a)) ? 1 : 0) + (dsl::is_true(table.at(b)) ? 1 : 0);
    ++(n == 2 ? report.tie_mix.both : n == 1 ? report.tie_mix.one : report.tie_mix.neither);
  }
  return report;
}

std::vector<AnalysisReport> run_grid(std::shared_ptr<const io::Dataset> dataset,
                                     std::shared_ptr<const dsl::DefinitionsLibrary> library, const GridSpec& spec,
                                     const GridOptions& options) {
  if (!dataset || !library) throw Error("grid run needs a dataset and a library");
  validate_grid(*dataset, *library, spec);

  const AnalysisSession session(dataset, library, spec.wave, spec.layout_seed);
  const std::size_t cols = spec.attributes.size();
  const std::size_t cells = spec.relationships.size() * cols;
  std::vector<AnalysisReport> reports(cells);
  std::vector<std::exception_ptr> failures(cells);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells; i = next++) {
      try {
        reports[i] = analyze_cell(session, spec.relationships[i / cols], spec.attributes[i % cols], spec.metrics);
        if (options.on_cell) options.on_cell(i, reports[i]);
      } catch (const std::exception& e) {
        failures[i] = std::current_exception();
        if (options.on_error) options.on_error(i, e.what());
      }
    }
  };

  unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cells, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!options.on_error) {
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }
  return reports;
}

std::vector<GridSummaryRow> summarize_grid(const std::vector<AnalysisReport>& reports) {
  std::vector<GridSummaryRow> rows;
  for (const auto& r : reports) {
    GridSummaryRow row;
    row.cell_id = r.cell_id;
    row.relationship = r.relationship;
    row.attribute = r.attribute;
    row.edge_count = r.network_summary.edge_count;
    row.density = r.network_summary.density;
    row.component_count = r.network_summary.component_count;
    row.isolate_count = r.network_summary.isolate_count;
    auto counts = [&](const char* key) {
      auto it = r.classification.find(key);
      return it == r.classification.end() ? ClassificationCounts{} : it->second;
    };
    row.total = counts("total");
    row.male = counts("male");
    row.female = counts("female");
    row.tie_mix = r.tie_mix;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace snawb::grid
