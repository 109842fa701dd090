#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>

#include "snawb/error.hpp"
#include "snawb/grid/compare.hpp"
#include "snawb/grid/grid.hpp"
#include "snawb/grid/individual.hpp"
#include "snawb/grid/session.hpp"
#include "snawb/io/ingest.hpp"
#include "snawb/io/report_json.hpp"
#include "support/fixtures.hpp"

namespace snawb::grid {
namespace {

namespace fs = std::filesystem;
const fs::path kClassroom = fs::path(SNAWB_FIXTURES_DIR) / "classroom";

std::shared_ptr<const io::Dataset> classroom() {
  static const auto ds = std::make_shared<const io::Dataset>(
      io::ingest_files(kClassroom / "questionnaire.json", kClassroom / "responses.csv").dataset.value());
  return ds;
}

GridSpec fixture_spec() {
  GridSpec spec;
  spec.wave = "w1";
  spec.roster_question = "q_time";
  spec.relationships = {"mutual_any", "strong_friendship"};
  spec.attributes = {"aalto_m7f5", "tomas_ge4", "audit_c_score"};
  spec.layout_seed = 7;
  return spec;
}

std::vector<std::string> issue_names(const GridSpec& spec, const dsl::DefinitionsLibrary& lib) {
  try {
    validate_grid(*classroom(), lib, spec);
  } catch (const GridSpecError& e) {
    std::vector<std::string> names;
    for (const auto& issue : e.issues()) names.push_back(issue.name);
    return names;
  }
  return {};
}

TEST(Session, MaterializesOnceAndShares) {
  AnalysisSession session(classroom(), testing::presets(), "w1", 7);
  const auto& a = session.network("mutual_any");
  const auto& b = session.network("mutual_any");
  EXPECT_EQ(&a, &b);
  EXPECT_EQ(&session.raw_graph("q_time"), &session.raw_graph("q_time"));
  EXPECT_EQ(a.network.edges.size(), 5u);
  EXPECT_EQ(session.attribute("tomas_ge4").size(), 8u);
  EXPECT_EQ(session.attribute("tomas_ge4").at("s08"), dsl::AttributeValue{dsl::NotEvaluable{}});
  EXPECT_EQ(session.response("s01")->individual_id, "s01");
  EXPECT_THROW(session.network("nope"), NotFoundError);
  EXPECT_THROW(session.individual("nope"), NotFoundError);
  EXPECT_THROW(AnalysisSession(classroom(), testing::presets(), "w9"), NotFoundError);
}

TEST(Session, ConcurrentRequestsComputeOnce) {
  AnalysisSession session(classroom(), testing::presets(), "w1");
  std::vector<std::thread> threads;
  std::vector<const MaterializedNetwork*> seen(8);
  for (std::size_t i = 0; i < seen.size(); ++i) {
    threads.emplace_back([&, i] { seen[i] = &session.network("friendship_ge2"); });
  }
  for (auto& t : threads) t.join();
  for (auto* p : seen) EXPECT_EQ(p, seen.front());
}

TEST(OnceCache, CachesFailures) {
  detail::OnceCache<int> cache;
  int calls = 0;
  auto fail = [&]() -> int {
    ++calls;
    throw Error("boom");
  };
  EXPECT_THROW(cache.get("k", fail), Error);
  EXPECT_THROW(cache.get("k", fail), Error);
  EXPECT_EQ(calls, 1);
}

TEST(Validate, ListsEveryProblem) {
  auto lib = testing::presets();
  auto spec = fixture_spec();
  EXPECT_TRUE(issue_names(spec, *lib).empty());
  spec.relationships = {"mutual_any", "no_such_rel", "mutual_any"};
  spec.attributes = {"tomas_ge4", "no_such_attr"};
  spec.wave = "w7";
  const auto names = issue_names(spec, *lib);
  EXPECT_GE(names.size(), 4u);
  auto has = [&](const std::string& n) { return std::find(names.begin(), names.end(), n) != names.end(); };
  EXPECT_TRUE(has("no_such_rel"));
  EXPECT_TRUE(has("no_such_attr"));
  EXPECT_TRUE(has("mutual_any"));
}

TEST(Validate, RejectsEmptyListsAndForeignQuestion) {
  auto lib = testing::presets();
  auto spec = fixture_spec();
  spec.relationships.clear();
  EXPECT_FALSE(issue_names(spec, *lib).empty());
  spec = fixture_spec();
  spec.roster_question = "q_other";
  EXPECT_FALSE(issue_names(spec, *lib).empty());
}

TEST(Run, ProducesEveryCellInSpecOrder) {
  const auto spec = fixture_spec();
  std::atomic<int> callbacks{0};
  GridOptions options;
  options.threads = 3;
  options.on_cell = [&](std::size_t, const AnalysisReport&) { ++callbacks; };
  const auto reports = run_grid(classroom(), testing::presets(), spec, options);
  ASSERT_EQ(reports.size(), 6u);
  EXPECT_EQ(callbacks.load(), 6);
  EXPECT_EQ(reports[0].relationship, "mutual_any");
  EXPECT_EQ(reports[0].attribute, "aalto_m7f5");
  EXPECT_EQ(reports[5].relationship, "strong_friendship");
  EXPECT_EQ(reports[5].attribute, "audit_c_score");
  EXPECT_EQ(reports[0].provenance, reports[1].provenance);
  EXPECT_NE(reports[0].provenance.hash, reports[3].provenance.hash);

  const std::string golden = io::read_file(kClassroom / "expected_summary.csv");
  EXPECT_EQ(io::summary_csv(summarize_grid(reports)), golden);
}

TEST(Run, DeterministicAcrossThreadCounts) {
  const auto spec = fixture_spec();
  GridOptions one;
  one.threads = 1;
  GridOptions four;
  four.threads = 4;
  const auto a = run_grid(classroom(), testing::presets(), spec, one);
  const auto b = run_grid(classroom(), testing::presets(), spec, four);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(io::report_to_json(a[i]), io::report_to_json(b[i]));
}

TEST(Run, InvalidSpecThrowsBeforeRunning) {
  auto spec = fixture_spec();
  spec.attributes = {"missing"};
  std::atomic<int> callbacks{0};
  GridOptions options;
  options.on_cell = [&](std::size_t, const AnalysisReport&) { ++callbacks; };
  EXPECT_THROW(run_grid(classroom(), testing::presets(), spec, options), GridSpecError);
  EXPECT_EQ(callbacks.load(), 0);
}

TEST(Cell, ReportContents) {
  AnalysisSession session(classroom(), testing::presets(), "w1", 7);
  const auto r = analyze_cell(session, "mutual_any", "aalto_m7f5", {MetricKind::degree});
  EXPECT_EQ(r.cell_id.rfind("cell-", 0), 0u);
  EXPECT_EQ(r.dataset_hash, classroom()->content_hash());
  EXPECT_EQ(r.metric_columns, std::vector<MetricKind>{MetricKind::degree});
  EXPECT_EQ(r.node_metrics.at("s01").degree, 2);
  EXPECT_EQ(r.node_metrics.at("s01").betweenness, 0.0);
  EXPECT_EQ(r.classification.at("total"), (ClassificationCounts{3, 4, 1}));
  EXPECT_EQ(r.classification.at("male"), (ClassificationCounts{1, 2, 1}));
  EXPECT_EQ(r.classification.at("female"), (ClassificationCounts{1, 2, 0}));
  EXPECT_EQ(r.classification.at("unspecified"), (ClassificationCounts{1, 0, 0}));
  EXPECT_EQ(r.tie_mix, (TieMix{0, 4, 1}));
  EXPECT_EQ(r.genders.at("s07"), survey::Gender::unspecified);

  const auto with_metric = analyze_cell(session, "mutual_any", "bad_influence", {});
  EXPECT_EQ(with_metric.attribute_inputs.at("strong_friendship"),
            session.network("strong_friendship").network.provenance.hash);
}

TEST(Cell, IdDependsOnEveryInput) {
  const std::string base = cell_id("d", "r", "a", "w1", 1);
  EXPECT_EQ(base, cell_id("d", "r", "a", "w1", 1));
  EXPECT_NE(base, cell_id("x", "r", "a", "w1", 1));
  EXPECT_NE(base, cell_id("d", "x", "a", "w1", 1));
  EXPECT_NE(base, cell_id("d", "r", "x", "w1", 1));
  EXPECT_NE(base, cell_id("d", "r", "a", "w2", 1));
  EXPECT_NE(base, cell_id("d", "r", "a", "w1", 2));
}

TEST(ReportJson, RoundTripsExactly) {
  const auto reports = run_grid(classroom(), testing::presets(), fixture_spec());
  for (const auto& r : reports) {
    const auto text = io::report_to_json(r);
    const auto back = io::report_from_json(text);
    EXPECT_EQ(back, r) << r.cell_id;
    EXPECT_EQ(io::report_to_json(back), text);
  }
  EXPECT_THROW(io::report_from_json("{}"), Error);
  EXPECT_THROW(io::report_from_json("nope"), Error);
}

TEST(Compare, ListsClassificationChanges) {
  AnalysisSession session(classroom(), testing::presets(), "w1", 7);
  const auto from = analyze_cell(session, "mutual_any", "aalto_m7f5", {});
  const auto to = analyze_cell(session, "strong_friendship", "tomas_ge4", {});
  const auto d = compare(from, to);
  EXPECT_EQ(d.from_cell, from.cell_id);
  EXPECT_EQ(d.newly_classified, (std::vector<std::string>{"s02", "s05"}));
  EXPECT_TRUE(d.no_longer_classified.empty());
  EXPECT_EQ(d.counts_before.at("total").classified, 3);
  EXPECT_EQ(d.counts_after.at("total").classified, 5);
  EXPECT_EQ(d.edges_added.size(), 0u);
  EXPECT_EQ(d.edges_removed.size(), 3u);
  EXPECT_EQ(d.value_changes.size(), 2u);
  EXPECT_FALSE(d.metric_deltas.empty());
  EXPECT_TRUE(compare(from, from).metric_deltas.empty());
}

TEST(Compare, RejectsDifferentPopulations) {
  AnalysisSession session(classroom(), testing::presets(), "w1", 7);
  const auto a = analyze_cell(session, "mutual_any", "tomas_ge4", {});
  testing::DatasetBuilder b;
  b.add(testing::person(0, survey::Gender::male));
  AnalysisSession other(b.build(), testing::presets(), "w1", 7);
  const auto c = analyze_cell(other, "mutual_any", "tomas_ge4", {});
  EXPECT_THROW(compare(a, c), InputMismatchError);
}

TEST(Individual, ReportCoversScoresNetworksAndAttributes) {
  AnalysisSession session(classroom(), testing::presets(), "w1", 7);
  const auto r = individual_report(session, "s01", {"mutual_any", "strong_friendship"}, {"tomas_ge4", "aalto_m7f5"});
  EXPECT_TRUE(r.responded);
  EXPECT_EQ(r.individual.display_name, "Aino Virtanen");
  EXPECT_EQ(r.instruments.at("audit_c").score, 5);
  EXPECT_FALSE(r.instruments.at("audit_c").missing_data);
  EXPECT_EQ(r.networks.at("mutual_any").neighbours, (std::vector<std::string>{"s02", "s03"}));
  EXPECT_EQ(r.networks.at("strong_friendship").neighbours, std::vector<std::string>{"s02"});
  EXPECT_EQ(r.attributes.at("tomas_ge4"), dsl::AttributeValue{true});

  const auto s08 = individual_report(session, "s08", {}, {"tomas_ge4"});
  EXPECT_TRUE(s08.instruments.at("audit_c").missing_data);
  EXPECT_EQ(s08.attributes.at("tomas_ge4"), dsl::AttributeValue{dsl::NotEvaluable{}});
  EXPECT_THROW(individual_report(session, "zz", {}, {}), NotFoundError);
  EXPECT_THROW(individual_report(session, "s01", {"nope"}, {}), NotFoundError);
}

}  // namespace
}  // namespace snawb::grid
