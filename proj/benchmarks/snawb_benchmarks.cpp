#include <benchmark/benchmark.h>

#include <random>

#include "snawb/dsl/parser.hpp"
#include "snawb/dsl/presets.hpp"
#include "snawb/grid/grid.hpp"
#include "snawb/io/synthetic.hpp"
#include "snawb/metrics/metrics.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace snawb;

metrics::AdjacencyGraph random_graph(std::size_t n, double mean_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double p = mean_degree / static_cast<double>(n - 1);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) edges.emplace_back(a, b);
    }
  }
  return metrics::AdjacencyGraph::undirected(n, edges);
}

void BM_Betweenness(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 6.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::betweenness(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Betweenness)->RangeMultiplier(2)->Range(32, 1024)->Complexity();

void BM_HarmonicCloseness(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 6.0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::harmonic_closeness(g));
}
BENCHMARK(BM_HarmonicCloseness)->Arg(214)->Arg(1024);

void BM_DeriveNetwork(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto raw = testing::random_roster(rng, static_cast<int>(state.range(0)), 0.3);
  const auto lib = testing::presets();
  const auto& rel = *lib->find_relationship("friendship_mean35");
  for (auto _ : state) benchmark::DoNotOptimize(net::derive_network(raw, rel));
}
BENCHMARK(BM_DeriveNetwork)->Arg(30)->Arg(214);

void BM_ParsePresets(benchmark::State& state) {
  const auto source = dsl::preset_library_source();
  for (auto _ : state) benchmark::DoNotOptimize(dsl::parse_definitions(source));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * source.size()));
}
BENCHMARK(BM_ParsePresets);

void BM_CheckPresets(benchmark::State& state) {
  const auto schema = survey::catalog::core_questionnaire();
  const auto source = dsl::preset_library_source();
  for (auto _ : state) benchmark::DoNotOptimize(dsl::DefinitionsLibrary::from_source(source, schema));
}
BENCHMARK(BM_CheckPresets);

void BM_StudyScaleGrid(benchmark::State& state) {
  const auto data = io::generate_synthetic({});
  const auto ds = std::make_shared<const io::Dataset>(data.questionnaire, data.individuals, data.responses, false);
  const auto lib = testing::presets();
  grid::GridSpec spec;
  spec.wave = "w1";
  spec.roster_question = "q_time";
  spec.relationships = {"mutual_any", "friendship_ge3", "strong_friendship"};
  spec.attributes = {"aalto_m7f5", "aalto_m8f5", "tomas_ge4", "bad_influence"};
  grid::GridOptions options;
  options.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid::run_grid(ds, lib, spec, options));
}
BENCHMARK(BM_StudyScaleGrid)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
