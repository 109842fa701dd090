#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>

#include "snawb/dsl/library.hpp"
#include "snawb/dsl/presets.hpp"
#include "snawb/error.hpp"
#include "snawb/grid/compare.hpp"
#include "snawb/grid/grid.hpp"
#include "snawb/io/anonymize.hpp"
#include "snawb/io/gridspec_file.hpp"
#include "snawb/io/ingest.hpp"
#include "snawb/io/network_export.hpp"
#include "snawb/io/questionnaire_file.hpp"
#include "snawb/io/report_json.hpp"
#include "snawb/io/responses_file.hpp"
#include "snawb/io/synthetic.hpp"
#include "snawb/metrics/metrics.hpp"
#include "snawb/service/http.hpp"
#include "snawb/survey/audit.hpp"

namespace fs = std::filesystem;
using namespace snawb;

namespace {

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kUsage = 2;

// Raised inside a subcommand once its diagnostics have been printed.
struct Failed {
  int code = kDiagnostics;
};

void report(const std::vector<io::FileDiagnostic>& diagnostics) {
  for (const auto& d : diagnostics) std::cerr << io::format_human(d) << '\n';
  for (const auto& d : diagnostics) std::cerr << io::diagnostic_to_json(d) << '\n';
}

void report(const std::vector<dsl::Diagnostic>& diagnostics, const std::string& source) {
  for (const auto& d : diagnostics) std::cerr << dsl::format_human(d, source) << '\n';
  for (const auto& d : diagnostics) std::cerr << io::diagnostic_to_json(d, source) << '\n';
}

struct DatasetArgs {
  std::string questionnaire;
  std::string responses;

  void add_to(CLI::App* app) {
    app->add_option("-q,--questionnaire", questionnaire, "Questionnaire JSON file")->required()->check(CLI::ExistingFile);
    app->add_option("-r,--responses", responses, "Responses CSV file")->required()->check(CLI::ExistingFile);
  }

  std::shared_ptr<const io::Dataset> load() const {
    auto result = io::ingest_files(questionnaire, responses);
    report(result.diagnostics);
    if (!result.dataset) throw Failed{};
    return std::make_shared<const io::Dataset>(std::move(*result.dataset));
  }
};

std::shared_ptr<const dsl::DefinitionsLibrary> load_library(const std::optional<std::string>& path,
                                                            const survey::Questionnaire& schema) {
  const std::string source = path ? io::read_file(*path) : std::string(dsl::preset_library_source());
  const std::string name = path ? fs::path(*path).filename().string() : "presets.defs";
  auto built = dsl::DefinitionsLibrary::from_source(source, schema);
  if (!built.ok()) {
    report(built.diagnostics, name);
    throw Failed{};
  }
  return std::make_shared<const dsl::DefinitionsLibrary>(std::move(*built.library));
}

std::string pick_wave(const io::Dataset& ds, const std::string& wave) {
  if (!wave.empty()) return wave;
  const auto waves = ds.waves();
  if (waves.size() != 1) {
    std::cerr << "error: the dataset has " << waves.size() << " waves; choose one with --wave\n";
    throw Failed{kUsage};
  }
  return waves.front();
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
  } else {
    io::write_file(out, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social network analysis workbench for roster surveys"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "snawb 0.3.0");

  // ingest
  DatasetArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "Validate a questionnaire and its responses");
  ingest_args.add_to(ingest);
  ingest->callback([&] {
    auto ds = ingest_args.load();
    std::cout << "dataset " << ds->id() << "\n"
              << "content_hash " << ds->content_hash() << "\n"
              << "individuals " << ds->individuals().size() << "\n"
              << "waves " << ds->waves().size() << "\n"
              << "answer_items " << ds->answer_item_count() << "\n";
  });

  // check-defs
  std::string defs_path;
  std::string defs_questionnaire;
  auto* check = app.add_subcommand("check-defs", "Parse and type-check a definitions file");
  check->add_option("definitions", defs_path, "Definitions file")->required()->check(CLI::ExistingFile);
  check->add_option("-q,--questionnaire", defs_questionnaire, "Questionnaire JSON (default: built-in survey)")
      ->check(CLI::ExistingFile);
  check->callback([&] {
    survey::Questionnaire schema = survey::catalog::core_questionnaire();
    if (!defs_questionnaire.empty()) {
      auto q = io::parse_questionnaire(io::read_file(defs_questionnaire), fs::path(defs_questionnaire).filename().string());
      report(q.diagnostics);
      if (!q.questionnaire) throw Failed{};
      schema = *q.questionnaire;
    }
    auto lib = load_library(defs_path, schema);
    std::cout << "ok: " << lib->relationships().size() << " relationships, " << lib->attributes().size()
              << " attributes\n";
  });

  // derive
  DatasetArgs derive_args;
  std::optional<std::string> derive_defs;
  std::string derive_name, derive_wave, derive_out, derive_format = "graphml";
  std::vector<std::string> derive_attrs;
  std::uint64_t derive_seed = 1;
  auto* derive = app.add_subcommand("derive", "Derive one network and export it");
  derive_args.add_to(derive);
  derive->add_option("-d,--definitions", derive_defs, "Definitions file (default: presets)")->check(CLI::ExistingFile);
  derive->add_option("--definition", derive_name, "Relationship to derive")->required();
  derive->add_option("-a,--attribute", derive_attrs, "Attribute to attach to nodes (repeatable)");
  derive->add_option("--wave", derive_wave, "Wave label");
  derive->add_option("--seed", derive_seed, "Layout seed");
  derive->add_option("--format", derive_format, "graphml or edgelist")->check(CLI::IsMember({"graphml", "edgelist"}));
  derive->add_option("-o,--out", derive_out, "Output file (default: stdout)");
  derive->callback([&] {
    auto ds = derive_args.load();
    auto lib = load_library(derive_defs, ds->questionnaire());
    grid::AnalysisSession session(ds, lib, pick_wave(*ds, derive_wave), derive_seed);
    const auto& m = session.network(derive_name);
    std::vector<io::NodeAttributeColumn> columns;
    for (const auto& name : derive_attrs) {
      const auto* attr = lib->find_attribute(name);
      if (attr == nullptr) throw NotFoundError("unknown attribute '" + name + "'");
      columns.push_back({name, attr->definition.result_type, session.attribute(name)});
    }
    emit(derive_out, io::export_network(m.network, session.layout(m.network.question_id), ds->individuals(), columns,
                                        *io::parse_network_format(derive_format)));
  });

  // metrics
  DatasetArgs metrics_args;
  std::optional<std::string> metrics_defs;
  std::vector<std::string> metrics_names;
  std::string metrics_wave, metrics_out, metrics_raw;
  auto* metrics_cmd = app.add_subcommand("metrics", "Write node and network metric tables");
  metrics_args.add_to(metrics_cmd);
  metrics_cmd->add_option("-d,--definitions", metrics_defs, "Definitions file (default: presets)")->check(CLI::ExistingFile);
  metrics_cmd->add_option("--definition", metrics_names, "Relationship (repeatable)");
  metrics_cmd->add_option("--raw", metrics_raw, "Also write the raw roster graph of this question");
  metrics_cmd->add_option("--wave", metrics_wave, "Wave label");
  metrics_cmd->add_option("-o,--out", metrics_out, "Output directory")->required();
  metrics_cmd->callback([&] {
    auto ds = metrics_args.load();
    auto lib = load_library(metrics_defs, ds->questionnaire());
    grid::AnalysisSession session(ds, lib, pick_wave(*ds, metrics_wave));
    const std::vector<MetricKind> all(kAllMetricKinds.begin(), kAllMetricKinds.end());
    std::string summary = "network,nodes,edges,density,reciprocity,components,isolates\n";
    auto add_summary = [&](const metrics::NetworkMetrics& m) {
      summary += m.network + ',' + std::to_string(m.node_count) + ',' + std::to_string(m.edge_count) + ',' +
                 std::to_string(m.density) + ',' + (m.reciprocity_rate ? std::to_string(*m.reciprocity_rate) : "") +
                 ',' + std::to_string(m.component_count) + ',' + std::to_string(m.isolate_count) + '\n';
    };
    if (!metrics_raw.empty()) {
      const auto& raw = session.raw_graph(metrics_raw);
      io::write_file(fs::path(metrics_out) / ("raw_" + metrics_raw + ".csv"),
                     io::node_metrics_csv(metrics::node_metrics(raw), all));
      add_summary(metrics::network_metrics(raw));
    }
    for (const auto& name : metrics_names) {
      const auto& m = session.network(name);
      io::write_file(fs::path(metrics_out) / (name + ".csv"), io::node_metrics_csv(m.nodes, all));
      add_summary(m.summary);
    }
    io::write_file(fs::path(metrics_out) / "networks.csv", summary);
  });

  // grid
  std::string grid_spec_path, grid_out;
  unsigned grid_threads = 0;
  auto* grid_cmd = app.add_subcommand("grid", "Run every relationship x attribute cell of a grid spec");
  grid_cmd->add_option("spec", grid_spec_path, "Grid spec JSON file")->required()->check(CLI::ExistingFile);
  grid_cmd->add_option("-o,--out", grid_out, "Output directory")->required();
  grid_cmd->add_option("--threads", grid_threads, "Worker threads (default: all cores)");
  grid_cmd->callback([&] {
    const auto spec_file = io::parse_gridspec(io::read_file(grid_spec_path), fs::path(grid_spec_path).parent_path());
    DatasetArgs args{spec_file.questionnaire.string(), spec_file.responses.string()};
    auto ds = args.load();
    auto lib = load_library(spec_file.definitions ? std::optional(spec_file.definitions->string()) : std::nullopt,
                            ds->questionnaire());
    std::vector<grid::AnalysisReport> reports;
    try {
      reports = grid::run_grid(ds, lib, spec_file.spec, {grid_threads, {}, {}});
    } catch (const grid::GridSpecError& e) {
      for (const auto& issue : e.issues()) {
        std::cerr << grid_spec_path << ": error: " << (issue.name.empty() ? "" : issue.name + ": ") << issue.message
                  << '\n';
      }
      for (const auto& issue : e.issues()) std::cerr << io::diagnostic_to_json(issue) << '\n';
      throw Failed{};
    }
    for (const auto& r : reports) {
      io::write_file(fs::path(grid_out) / (r.relationship + "__" + r.attribute + ".json"), io::report_to_json(r));
    }
    io::write_file(fs::path(grid_out) / "summary.csv", io::summary_csv(grid::summarize_grid(reports)));
    std::cout << reports.size() << " cells written to " << grid_out << '\n';
  });

  // compare
  std::string compare_from, compare_to, compare_out;
  auto* compare_cmd = app.add_subcommand("compare", "Write the delta between two cell reports");
  compare_cmd->add_option("from", compare_from, "Baseline report")->required()->check(CLI::ExistingFile);
  compare_cmd->add_option("to", compare_to, "Compared report")->required()->check(CLI::ExistingFile);
  compare_cmd->add_option("-o,--out", compare_out, "Output file (default: stdout)");
  compare_cmd->callback([&] {
    const auto a = io::report_from_json(io::read_file(compare_from));
    const auto b = io::report_from_json(io::read_file(compare_to));
    emit(compare_out, io::delta_to_json(grid::compare(a, b)));
  });

  // anonymize
  DatasetArgs anon_args;
  std::string anon_salt, anon_out, anon_map;
  auto* anon = app.add_subcommand("anonymize", "Replace display names with pseudonyms");
  anon_args.add_to(anon);
  anon->add_option("--salt", anon_salt, "Secret salt for the pseudonym order")->required();
  anon->add_option("-o,--out", anon_out, "Anonymized responses CSV")->required();
  anon->add_option("--map", anon_map, "Pseudonym map JSON; keep it apart from the data")->required();
  anon->callback([&] {
    auto ds = anon_args.load();
    auto [anonymized, map] = io::anonymize(*ds, anon_salt);
    io::write_file(anon_out, io::write_responses(anonymized.questionnaire(), anonymized.individuals(),
                                                 anonymized.responses()));
    io::write_file(anon_map, io::write_anonymization_map(map));
    std::cout << "dataset " << anonymized.id() << "\n";
  });

  // generate
  io::SyntheticOptions gen;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a synthetic classroom survey dataset");
  generate->add_option("-o,--out", gen_out, "Output directory")->required();
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--students", gen.students, "Number of students");
  generate->add_option("--classrooms", gen.classrooms, "Number of classrooms");
  generate->add_option("--schools", gen.schools, "Number of schools");
  generate->add_option("--waves", gen.waves, "Wave labels");
  generate->add_option("--items", gen.target_items, "Exact answer item total (0 = no target)");
  generate->callback([&] {
    const auto data = io::generate_synthetic(gen);
    io::write_file(fs::path(gen_out) / "questionnaire.json", io::write_questionnaire(data.questionnaire));
    io::write_file(fs::path(gen_out) / "responses.csv",
                   io::write_responses(data.questionnaire, data.individuals, data.responses));
    std::cout << data.individuals.size() << " individuals written to " << gen_out << '\n';
  });

  // serve
  std::string serve_host = "127.0.0.1", serve_q, serve_r;
  std::optional<std::string> serve_defs;
  int serve_port = 8080;
  auto* serve = app.add_subcommand("serve", "Start the HTTP JSON service");
  serve->add_option("--host", serve_host, "Listen address");
  serve->add_option("--port", serve_port, "Listen port");
  serve->add_option("-q,--questionnaire", serve_q, "Preload this questionnaire")->check(CLI::ExistingFile);
  serve->add_option("-r,--responses", serve_r, "Preload these responses")->check(CLI::ExistingFile);
  serve->add_option("-d,--definitions", serve_defs, "Library for the preloaded dataset")->check(CLI::ExistingFile);
  serve->callback([&] {
    service::Service svc;
    if (!serve_q.empty() && !serve_r.empty()) {
      auto ds = DatasetArgs{serve_q, serve_r}.load();
      const auto id = svc.add_dataset(*ds);
      const auto lib = svc.add_library(id, serve_defs ? io::read_file(*serve_defs) : std::string(dsl::preset_library_source()));
      std::cout << "dataset " << id << " library " << lib << '\n';
    }
    service::HttpServer server(svc);
    std::cout << "listening on http://" << serve_host << ':' << serve_port << "/api/v1" << std::endl;
    server.run(serve_host, serve_port);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const Failed& f) {
    return f.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDiagnostics;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDiagnostics;
  }
  return kOk;
}
