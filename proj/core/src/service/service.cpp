#include "snawb/service/service.hpp"

#include <charconv>
#include <json.hpp>
#include <mutex>
#include <shared_mutex>
#include <thread>

#include "snawb/dsl/library.hpp"
#include "snawb/dsl/parser.hpp"
#include "snawb/dsl/presets.hpp"
#include "snawb/error.hpp"
#include "snawb/grid/compare.hpp"
#include "snawb/grid/grid.hpp"
#include "snawb/grid/individual.hpp"
#include "snawb/hash.hpp"
#include "snawb/io/anonymize.hpp"
#include "snawb/io/ingest.hpp"
#include "snawb/io/report_json.hpp"

namespace snawb::service {

using nlohmann::json;

namespace {

struct HttpError {
  int status;
  std::string code;
  std::string message;
  json diagnostics = json::array();
};

HttpError not_found(const std::string& what) { return {404, "not_found", what}; }

Response json_response(int status, const json& body) {
  return {status, body.dump(2) + "\n", {{"Content-Type", "application/json"}}};
}

Response raw_json(int status, std::string body) {
  return {status, std::move(body), {{"Content-Type", "application/json"}}};
}

Response error_response(const HttpError& e) {
  return json_response(e.status,
                       {{"error", {{"code", e.code}, {"message", e.message}, {"diagnostics", e.diagnostics}}}});
}

json parse_body(const Request& request) {
  if (request.body.empty()) return json::object();
  try {
    json body = json::parse(request.body);
    if (!body.is_object()) throw HttpError{400, "bad_request", "request body must be a JSON object"};
    return body;
  } catch (const json::parse_error& e) {
    throw HttpError{400, "bad_request", std::string("malformed JSON body: ") + e.what()};
  }
}

std::string body_text(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_string()) {
    throw HttpError{400, "bad_request", std::string("field '") + key + "' must be a string"};
  }
  return body[key].get<std::string>();
}

std::vector<std::string> body_names(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_array()) {
    throw HttpError{400, "bad_request", std::string("field '") + key + "' must be a list of names"};
  }
  std::vector<std::string> out;
  for (const auto& item : body[key]) {
    if (!item.is_string()) throw HttpError{400, "bad_request", std::string("field '") + key + "' must be a list of names"};
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    auto end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    if (end > start) parts.emplace_back(path.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

std::size_t parse_index(const std::string& text, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw HttpError{400, "bad_request", std::string(what) + " must be a non-negative integer"};
  }
  return value;
}

std::string query_value(const Request& r, const std::string& key) {
  auto it = r.query.find(key);
  return it == r.query.end() ? std::string() : it->second;
}

bool truthy(const std::string& text) { return text == "1" || text == "true" || text == "yes"; }

json embed(const std::string& serialized) { return json::parse(serialized); }

json dsl_diagnostics(const std::vector<dsl::Diagnostic>& diagnostics, std::string_view source) {
  json out = json::array();
  for (const auto& d : diagnostics) out.push_back(embed(io::diagnostic_to_json(d, source)));
  return out;
}

json file_diagnostics(const std::vector<io::FileDiagnostic>& diagnostics) {
  json out = json::array();
  for (const auto& d : diagnostics) out.push_back(embed(io::diagnostic_to_json(d)));
  return out;
}

json dataset_summary(const io::Dataset& ds) {
  json rosters = json::array();
  for (const auto& q : ds.questionnaire().roster_questions()) rosters.push_back(q.question_id);
  json instruments = json::array();
  for (const auto& i : ds.questionnaire().instruments()) instruments.push_back(i.instrument_id);
  return {{"id", ds.id()},
          {"content_hash", ds.content_hash()},
          {"anonymized", ds.anonymized()},
          {"questionnaire_id", ds.questionnaire().id()},
          {"individuals", ds.individuals().size()},
          {"waves", ds.waves()},
          {"answer_items", ds.answer_item_count()},
          {"roster_questions", rosters},
          {"instruments", instruments}};
}

json definition_json(const dsl::DefinitionsLibrary& lib, const std::string& name) {
  if (const auto* rel = lib.find_relationship(name)) {
    return {{"name", name},
            {"kind", "relationship"},
            {"roster_question", rel->definition.roster_question_id},
            {"text", rel->canonical_text},
            {"hash", rel->hash},
            {"dependents", lib.dependents_of(name)}};
  }
  const auto* attr = lib.find_attribute(name);
  if (attr == nullptr) throw not_found("unknown definition '" + name + "'");
  return {{"name", name},
          {"kind", "attribute"},
          {"type", std::string(dsl::to_string(attr->definition.result_type))},
          {"text", attr->canonical_text},
          {"hash", attr->hash},
          {"dependents", lib.dependents_of(name)}};
}

json library_definitions(const dsl::DefinitionsLibrary& lib) {
  json out = json::array();
  for (const auto& def : lib.definitions()) out.push_back(definition_json(lib, dsl::definition_name(def)));
  return out;
}

struct GridRun {
  std::string id;
  std::string library_id;
  std::string dataset_id;
  grid::GridSpec spec;

  std::mutex mutex;
  std::vector<std::string> status;
  std::vector<std::string> errors;
  std::vector<std::shared_ptr<const grid::AnalysisReport>> reports;
  std::vector<std::string> report_json;
  bool finished = false;
};

json spec_json(const grid::GridSpec& spec) {
  json metrics = json::array();
  for (auto kind : spec.metrics) metrics.push_back(std::string(metric_name(kind)));
  return {{"wave", spec.wave},
          {"roster_question", spec.roster_question},
          {"relationships", spec.relationships},
          {"attributes", spec.attributes},
          {"metrics", metrics},
          {"layout_seed", spec.layout_seed}};
}

}  // namespace

struct Service::Impl {
  struct Library {
    std::string id;
    std::string dataset_id;
    std::shared_ptr<const dsl::DefinitionsLibrary> definitions;
  };

  // Registry; one writer at a time, readers take snapshots of shared_ptrs.
  mutable std::shared_mutex mutex;
  std::map<std::string, std::shared_ptr<const io::Dataset>> datasets;
  std::map<std::string, Library> libraries;
  std::map<std::string, std::shared_ptr<GridRun>> runs;
  int next_library = 1;
  int next_run = 1;

  // Content-addressed caches.
  std::mutex cache_mutex;
  std::map<std::string, std::shared_ptr<grid::AnalysisSession>> sessions;
  std::map<std::string, std::shared_ptr<const std::string>> payloads;

  std::mutex threads_mutex;
  std::vector<std::thread> threads;

  std::shared_ptr<const io::Dataset> dataset(const std::string& id) const {
    std::shared_lock lock(mutex);
    auto it = datasets.find(id);
    if (it == datasets.end()) throw not_found("unknown dataset '" + id + "'");
    return it->second;
  }

  Library library(const std::string& id) const {
    std::shared_lock lock(mutex);
    auto it = libraries.find(id);
    if (it == libraries.end()) throw not_found("unknown library '" + id + "'");
    return it->second;
  }

  std::shared_ptr<GridRun> run(const std::string& id) const {
    std::shared_lock lock(mutex);
    auto it = runs.find(id);
    if (it == runs.end()) throw not_found("unknown grid run '" + id + "'");
    return it->second;
  }

  std::string register_dataset(io::Dataset ds) {
    auto shared = std::make_shared<const io::Dataset>(std::move(ds));
    std::unique_lock lock(mutex);
    datasets.emplace(shared->id(), shared);
    return shared->id();
  }

  std::string register_library(const std::string& dataset_id, std::string_view source, const char* source_name) {
    auto ds = dataset(dataset_id);
    auto built = dsl::DefinitionsLibrary::from_source(source, ds->questionnaire());
    if (!built.ok()) {
      throw HttpError{422, "validation_failed", "definitions do not check", dsl_diagnostics(built.diagnostics, source_name)};
    }
    auto lib = std::make_shared<const dsl::DefinitionsLibrary>(std::move(*built.library));
    std::unique_lock lock(mutex);
    const std::string id = "lib-" + std::to_string(next_library++);
    libraries[id] = {id, dataset_id, std::move(lib)};
    return id;
  }

  json library_json(const Library& lib) const {
    return {{"id", lib.id},
            {"dataset_id", lib.dataset_id},
            {"hash", sha256_hex(lib.definitions->canonical_text())},
            {"definitions", library_definitions(*lib.definitions)}};
  }

  std::string resolve_wave(const io::Dataset& ds, const Request& r) const {
    auto wave = query_value(r, "wave");
    if (!wave.empty()) return wave;
    const auto waves = ds.waves();
    if (waves.size() == 1) return waves.front();
    throw HttpError{400, "bad_request", "dataset has several waves; pass ?wave="};
  }

  std::shared_ptr<grid::AnalysisSession> session(const Library& lib, const Request& r) {
    auto ds = dataset(lib.dataset_id);
    const auto wave = resolve_wave(*ds, r);
    const auto seed_text = query_value(r, "seed");
    const std::uint64_t seed = seed_text.empty() ? 1 : parse_index(seed_text, "seed");
    ContentHasher h;
    // The dataset id separates anonymized copies, whose content hash is shared.
    h.field("session").field(ds->id()).field(ds->content_hash()).field(lib.definitions->canonical_text());
    h.field(wave).field(static_cast<long long>(seed));
    const auto key = h.hex();
    std::lock_guard lock(cache_mutex);
    auto& slot = sessions[key];
    if (!slot) slot = std::make_shared<grid::AnalysisSession>(ds, lib.definitions, wave, seed);
    return slot;
  }

  // Mutates a library through a full rebuild so dependents are re-checked.
  Response rebuild(const std::string& library_id, const std::function<std::vector<dsl::Definition>(
                                                      const dsl::DefinitionsLibrary&)>& edit,
                   int status, const std::string& name) {
    std::unique_lock lock(mutex);
    auto it = libraries.find(library_id);
    if (it == libraries.end()) throw not_found("unknown library '" + library_id + "'");
    auto ds = datasets.at(it->second.dataset_id);
    auto defs = edit(*it->second.definitions);
    auto built = dsl::DefinitionsLibrary::build(std::move(defs), ds->questionnaire());
    if (!built.ok()) {
      throw HttpError{422, "validation_failed", "library does not check after the change",
                      dsl_diagnostics(built.diagnostics, name)};
    }
    it->second.definitions = std::make_shared<const dsl::DefinitionsLibrary>(std::move(*built.library));
    if (status == 200 && !it->second.definitions->contains(name)) {
      return json_response(200, {{"deleted", name}});
    }
    return json_response(status, definition_json(*it->second.definitions, name));
  }

  dsl::Definition parse_one(const json& body) {
    const auto source = body_text(body, "source");
    auto parsed = dsl::parse_definition(source);
    if (!parsed.definition) {
      throw HttpError{422, "validation_failed", "definition has syntax errors", dsl_diagnostics(parsed.diagnostics, "source")};
    }
    return *parsed.definition;
  }

  Response launch_run(const json& body) {
    const auto lib = library(body_text(body, "library_id"));
    auto ds = dataset(lib.dataset_id);
    grid::GridSpec spec;
    spec.wave = body.contains("wave") ? body_text(body, "wave") : "";
    if (spec.wave.empty()) {
      const auto waves = ds->waves();
      if (waves.size() != 1) throw HttpError{400, "bad_request", "dataset has several waves; set 'wave'"};
      spec.wave = waves.front();
    }
    spec.roster_question = body_text(body, "roster_question");
    spec.relationships = body_names(body, "relationships");
    spec.attributes = body_names(body, "attributes");
    if (body.contains("metrics")) {
      for (const auto& name : body_names(body, "metrics")) {
        auto kind = parse_metric_name(name);
        if (!kind) throw HttpError{400, "bad_request", "unknown metric '" + name + "'"};
        spec.metrics.push_back(*kind);
      }
    }
    if (body.contains("layout_seed")) {
      if (!body["layout_seed"].is_number_unsigned()) throw HttpError{400, "bad_request", "layout_seed must be a non-negative integer"};
      spec.layout_seed = body["layout_seed"].get<std::uint64_t>();
    }
    grid::validate_grid(*ds, *lib.definitions, spec);

    auto run = std::make_shared<GridRun>();
    run->library_id = lib.id;
    run->dataset_id = ds->id();
    run->spec = spec;
    const std::size_t cells = spec.relationships.size() * spec.attributes.size();
    run->status.assign(cells, "pending");
    run->errors.assign(cells, "");
    run->reports.assign(cells, nullptr);
    run->report_json.assign(cells, "");
    {
      std::unique_lock lock(mutex);
      run->id = "run-" + std::to_string(next_run++);
      runs[run->id] = run;
    }

    auto definitions = lib.definitions;
    std::lock_guard threads_lock(threads_mutex);
    threads.emplace_back([run, ds, definitions] {
      grid::GridOptions options;
      options.on_cell = [&](std::size_t i, const grid::AnalysisReport& report) {
        auto text = io::report_to_json(report);
        std::lock_guard lock(run->mutex);
        run->reports[i] = std::make_shared<const grid::AnalysisReport>(report);
        run->report_json[i] = std::move(text);
        run->status[i] = "done";
      };
      options.on_error = [&](std::size_t i, const std::string& message) {
        std::lock_guard lock(run->mutex);
        run->status[i] = "failed";
        run->errors[i] = message;
      };
      try {
        grid::run_grid(ds, definitions, run->spec, options);
      } catch (const std::exception& e) {
        std::lock_guard lock(run->mutex);
        for (std::size_t i = 0; i < run->status.size(); ++i) {
          if (run->status[i] == "pending") {
            run->status[i] = "failed";
            run->errors[i] = e.what();
          }
        }
      }
      std::lock_guard lock(run->mutex);
      run->finished = true;
    });
    return json_response(202, {{"run_id", run->id}, {"cells", cells}, {"status", "running"}});
  }

  json run_status(GridRun& run) {
    std::lock_guard lock(run.mutex);
    const std::size_t cols = run.spec.attributes.size();
    json cells = json::array();
    std::map<std::string, int> counts{{"pending", 0}, {"done", 0}, {"failed", 0}};
    std::vector<grid::AnalysisReport> finished_reports;
    for (std::size_t i = 0; i < run.status.size(); ++i) {
      json cell = {{"index", i},
                   {"relationship", run.spec.relationships[i / cols]},
                   {"attribute", run.spec.attributes[i % cols]},
                   {"status", run.status[i]}};
      if (run.reports[i]) {
        cell["cell_id"] = run.reports[i]->cell_id;
        finished_reports.push_back(*run.reports[i]);
      }
      if (!run.errors[i].empty()) cell["error"] = run.errors[i];
      ++counts[run.status[i]];
      cells.push_back(std::move(cell));
    }
    const std::string status = !run.finished ? "running" : counts["failed"] > 0 ? "failed" : "done";
    json out = {{"run_id", run.id},
                {"library_id", run.library_id},
                {"dataset_id", run.dataset_id},
                {"spec", spec_json(run.spec)},
                {"status", status},
                {"counts", counts},
                {"cells", cells}};
    if (run.finished && counts["failed"] == 0) {
      json summary = json::array();
      for (const auto& row : grid::summarize_grid(finished_reports)) {
        summary.push_back({{"cell_id", row.cell_id},
                           {"relationship", row.relationship},
                           {"attribute", row.attribute},
                           {"edges", row.edge_count},
                           {"density", row.density},
                           {"components", row.component_count},
                           {"isolates", row.isolate_count},
                           {"classified", row.total.classified},
                           {"classified_male", row.male.classified},
                           {"classified_female", row.female.classified},
                           {"not_evaluable", row.total.not_evaluable}});
      }
      out["summary"] = std::move(summary);
    }
    return out;
  }

  std::shared_ptr<const grid::AnalysisReport> cell_report(GridRun& run, const std::string& index_text,
                                                          std::string* json_text = nullptr) {
    const auto index = parse_index(index_text, "cell index");
    std::lock_guard lock(run.mutex);
    if (index >= run.status.size()) throw not_found("grid run " + run.id + " has no cell " + index_text);
    if (run.status[index] == "pending") throw HttpError{409, "not_ready", "cell " + index_text + " is still running"};
    if (run.status[index] == "failed") throw HttpError{409, "cell_failed", run.errors[index]};
    if (json_text != nullptr) *json_text = run.report_json[index];
    return run.reports[index];
  }

  Response route(const Request& r) {
    const auto parts = split_path(r.path);
    if (parts.size() < 3 || parts[0] != "api" || parts[1] != "v1") throw not_found("no route for " + r.path);
    const std::vector<std::string> p(parts.begin() + 2, parts.end());
    const auto& m = r.method;
    auto method_not_allowed = [&] { return HttpError{405, "method_not_allowed", m + " is not supported on " + r.path}; };

    if (p[0] == "datasets") {
      if (p.size() == 1 && m == "GET") {
        json list = json::array();
        std::shared_lock lock(mutex);
        for (const auto& [id, ds] : datasets) list.push_back(dataset_summary(*ds));
        return json_response(200, {{"datasets", list}});
      }
      if (p.size() == 1 && m == "POST") return upload_dataset(r);
      if (p.size() == 2 && m == "GET") return json_response(200, dataset_summary(*dataset(p[1])));
      if (p.size() == 3 && p[2] == "anonymize" && m == "POST") {
        const auto body = parse_body(r);
        auto [anon, map] = io::anonymize(*dataset(p[1]), body_text(body, "salt"));
        json summary = dataset_summary(anon);
        json map_json = json::parse(io::write_anonymization_map(map));
        register_dataset(std::move(anon));
        return json_response(201, {{"dataset", summary}, {"map", map_json}});
      }
      throw p.size() <= 3 ? method_not_allowed() : not_found("no route for " + r.path);
    }

    if (p[0] == "libraries") {
      if (p.size() == 1 && m == "GET") {
        json list = json::array();
        std::vector<Library> libs;
        {
          std::shared_lock lock(mutex);
          for (const auto& [id, lib] : libraries) libs.push_back(lib);
        }
        for (const auto& lib : libs) list.push_back(library_json(lib));
        return json_response(200, {{"libraries", list}});
      }
      if (p.size() == 1 && m == "POST") {
        const auto body = parse_body(r);
        const auto dataset_id = body_text(body, "dataset_id");
        const bool presets = !body.contains("source");
        const std::string source = presets ? std::string(dsl::preset_library_source()) : body_text(body, "source");
        const auto id = register_library(dataset_id, source, presets ? "presets" : "source");
        return json_response(201, library_json(library(id)));
      }
      if (p.size() < 2) throw method_not_allowed();
      const auto lib = library(p[1]);
      if (p.size() == 2) {
        if (m != "GET") throw method_not_allowed();
        return json_response(200, library_json(lib));
      }
      const auto& section = p[2];
      if (section == "definitions") return definitions_route(r, lib, p);
      if (section == "check" && p.size() == 3) {
        if (m != "POST") throw method_not_allowed();
        const auto body = parse_body(r);
        const auto source = body_text(body, "source");
        auto parsed = dsl::parse_definition(source);
        if (!parsed.definition) {
          return json_response(200, {{"ok", false}, {"diagnostics", dsl_diagnostics(parsed.diagnostics, "source")}});
        }
        auto ds = dataset(lib.dataset_id);
        auto checked = dsl::type_check(*parsed.definition, *lib.definitions, ds->questionnaire());
        json out = {{"ok", checked.diagnostics.empty()}, {"diagnostics", dsl_diagnostics(checked.diagnostics, "source")}};
        if (checked.diagnostics.empty()) {
          out["name"] = dsl::definition_name(*parsed.definition);
          out["text"] = std::visit([](const auto& d) { return d.canonical_text; }, *checked.definition);
        }
        return json_response(200, out);
      }
      if (section == "networks" && p.size() == 4) {
        if (m != "GET") throw method_not_allowed();
        if (lib.definitions->find_relationship(p[3]) == nullptr) throw not_found("unknown relationship '" + p[3] + "'");
        auto s = session(lib, r);
        const auto& materialized = s->network(p[3]);
        ContentHasher h;
        h.field("network-payload").field(materialized.network.provenance.hash).field(static_cast<long long>(s->layout_seed()));
        const auto key = h.hex();
        std::shared_ptr<const std::string> payload;
        bool hit = true;
        {
          std::lock_guard lock(cache_mutex);
          auto it = payloads.find(key);
          if (it != payloads.end()) payload = it->second;
        }
        if (!payload) {
          hit = false;
          auto built = std::make_shared<const std::string>(io::network_to_json(*s, p[3]));
          std::lock_guard lock(cache_mutex);
          payload = payloads.emplace(key, built).first->second;
        }
        Response out = raw_json(200, *payload);
        out.headers["X-Cache"] = hit ? "hit" : "miss";
        out.headers["X-Cache-Key"] = key;
        return out;
      }
      if (section == "attributes" && p.size() == 5 && p[4] == "evaluate") {
        if (m != "GET") throw method_not_allowed();
        if (lib.definitions->find_attribute(p[3]) == nullptr) throw not_found("unknown attribute '" + p[3] + "'");
        const auto network = query_value(r, "network");
        if (!network.empty() && lib.definitions->find_relationship(network) == nullptr) {
          throw not_found("unknown relationship '" + network + "'");
        }
        auto s = session(lib, r);
        return raw_json(200, io::attribute_to_json(*s, p[3], network));
      }
      if (section == "individuals" && p.size() == 4) {
        if (m != "GET") throw method_not_allowed();
        auto s = session(lib, r);
        std::vector<std::string> rels;
        for (const auto& rel : lib.definitions->relationships()) rels.push_back(rel.name());
        const auto& attrs = lib.definitions->evaluation_order();
        return raw_json(200, io::individual_to_json(grid::individual_report(*s, p[3], rels, attrs)));
      }
      throw not_found("no route for " + r.path);
    }

    if (p[0] == "grid-runs") {
      if (p.size() == 1 && m == "POST") return launch_run(parse_body(r));
      if (p.size() == 1 && m == "GET") {
        std::vector<std::shared_ptr<GridRun>> list;
        {
          std::shared_lock lock(mutex);
          for (const auto& [id, run] : runs) list.push_back(run);
        }
        json out = json::array();
        for (const auto& run : list) out.push_back(run_status(*run));
        return json_response(200, {{"runs", out}});
      }
      if (p.size() < 2) throw method_not_allowed();
      auto run = this->run(p[1]);
      if (m != "GET") throw method_not_allowed();
      if (p.size() == 2) return json_response(200, run_status(*run));
      if (p.size() == 4 && p[2] == "cells") {
        std::string text;
        cell_report(*run, p[3], &text);
        return raw_json(200, text);
      }
      if (p.size() == 3 && p[2] == "delta") {
        const auto from = query_value(r, "from");
        const auto to = query_value(r, "to");
        if (from.empty() || to.empty()) throw HttpError{400, "bad_request", "pass ?from=<cell>&to=<cell>"};
        auto a = cell_report(*run, from);
        auto b = cell_report(*run, to);
        return raw_json(200, io::delta_to_json(grid::compare(*a, *b)));
      }
      throw not_found("no route for " + r.path);
    }
    throw not_found("no route for " + r.path);
  }

  Response definitions_route(const Request& r, const Library& lib, const std::vector<std::string>& p) {
    const auto& m = r.method;
    if (p.size() == 3) {
      if (m == "GET") return json_response(200, {{"definitions", library_definitions(*lib.definitions)}});
      if (m != "POST") throw HttpError{405, "method_not_allowed", m + " is not supported on " + r.path};
      auto def = parse_one(parse_body(r));
      const auto name = dsl::definition_name(def);
      {
        std::shared_lock lock(mutex);
        if (libraries.at(lib.id).definitions->contains(name)) {
          throw HttpError{409, "name_collision", "library " + lib.id + " already defines '" + name + "'"};
        }
      }
      return rebuild(lib.id, [&](const dsl::DefinitionsLibrary& current) {
        if (current.contains(name)) {
          throw HttpError{409, "name_collision", "library " + lib.id + " already defines '" + name + "'"};
        }
        auto defs = current.definitions();
        defs.push_back(def);
        return defs;
      }, 201, name);
    }
    if (p.size() != 4) throw not_found("no route for " + r.path);
    const auto& name = p[3];
    if (m == "GET") return json_response(200, definition_json(*lib.definitions, name));
    if (m == "PUT") {
      auto def = parse_one(parse_body(r));
      if (dsl::definition_name(def) != name) {
        throw HttpError{422, "validation_failed",
                        "definition is named '" + dsl::definition_name(def) + "' but the path names '" + name + "'"};
      }
      return rebuild(lib.id, [&](const dsl::DefinitionsLibrary& current) {
        if (!current.contains(name)) throw not_found("unknown definition '" + name + "'");
        auto defs = current.definitions();
        for (auto& d : defs) {
          if (dsl::definition_name(d) == name) d = def;
        }
        return defs;
      }, 200, name);
    }
    if (m == "DELETE") {
      return rebuild(lib.id, [&](const dsl::DefinitionsLibrary& current) {
        if (!current.contains(name)) throw not_found("unknown definition '" + name + "'");
        const auto users = current.dependents_of(name);
        if (!users.empty()) {
          json list = json::array();
          for (const auto& u : users) list.push_back({{"name", u}, {"message", "references '" + name + "'"}});
          throw HttpError{409, "in_use", "'" + name + "' is referenced by other definitions", list};
        }
        auto defs = current.definitions();
        std::erase_if(defs, [&](const dsl::Definition& d) { return dsl::definition_name(d) == name; });
        return defs;
      }, 200, name);
    }
    throw HttpError{405, "method_not_allowed", m + " is not supported on " + r.path};
  }

  Response upload_dataset(const Request& r) {
    const auto body = parse_body(r);
    if (!body.contains("questionnaire")) throw HttpError{400, "bad_request", "field 'questionnaire' is required"};
    const std::string questionnaire =
        body["questionnaire"].is_string() ? body["questionnaire"].get<std::string>() : body["questionnaire"].dump();
    const auto responses = body_text(body, "responses");
    const bool validate_only = truthy(query_value(r, "validate_only")) ||
                               (body.contains("validate_only") && body["validate_only"].is_boolean() &&
                                body["validate_only"].get<bool>());
    auto result = io::ingest(questionnaire, responses, "questionnaire", "responses");
    const auto diagnostics = file_diagnostics(result.diagnostics);
    if (validate_only) {
      json out = {{"valid", result.dataset.has_value()}, {"diagnostics", diagnostics}};
      if (result.dataset) out["dataset"] = dataset_summary(*result.dataset);
      return json_response(200, out);
    }
    if (!result.dataset) throw HttpError{422, "validation_failed", "dataset rejected", diagnostics};
    json summary = dataset_summary(*result.dataset);
    register_dataset(std::move(*result.dataset));
    return json_response(201, {{"dataset", summary}, {"diagnostics", diagnostics}});
  }
};

Service::Service() : impl_(std::make_unique<Impl>()) {}

Service::~Service() { wait_for_runs(); }

void Service::wait_for_runs() {
  std::vector<std::thread> threads;
  {
    std::lock_guard lock(impl_->threads_mutex);
    threads.swap(impl_->threads);
  }
  for (auto& t : threads) t.join();
}

std::string Service::add_dataset(io::Dataset dataset) { return impl_->register_dataset(std::move(dataset)); }

std::string Service::add_library(const std::string& dataset_id, std::string_view source) {
  try {
    return impl_->register_library(dataset_id, source, "definitions");
  } catch (const HttpError& e) {
    throw Error(e.message + ": " + e.diagnostics.dump());
  }
}

Response Service::handle(const Request& request) {
  try {
    return impl_->route(request);
  } catch (const HttpError& e) {
    return error_response(e);
  } catch (const grid::GridSpecError& e) {
    json issues = json::array();
    for (const auto& issue : e.issues()) issues.push_back(embed(io::diagnostic_to_json(issue)));
    return error_response({422, "validation_failed", "invalid grid specification", issues});
  } catch (const NotFoundError& e) {
    return error_response(not_found(e.what()));
  } catch (const InputMismatchError& e) {
    return error_response({422, "input_mismatch", e.what()});
  } catch (const Error& e) {
    return error_response({400, "bad_request", e.what()});
  } catch (const std::exception& e) {
    return error_response({500, "internal", e.what()});
  }
}

}  // namespace snawb::service
