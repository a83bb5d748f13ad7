#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "langeval/dataset_io.hpp"
#include "langeval/discrepancy.hpp"
#include "langeval/report.hpp"
#include "langeval/scoring.hpp"
#include "langeval/sensitivity.hpp"

namespace {

using namespace langeval;

const Dataset& bundled() {
  static const Dataset ds = load_dataset(std::string(LANGEVAL_BENCH_DATA_DIR) + "/paper-2023-oop.json");
  return ds;
}

// n subjects rated on m aggregate parameters with four sub-parameters each.
Dataset synthetic(int n, int m) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> level(0, 3);
  Dataset ds;
  for (int s = 0; s < n; ++s) ds.subjects.push_back({"s" + std::to_string(s), "S" + std::to_string(s), std::nullopt});
  for (int p = 0; p < m; ++p) {
    Parameter param{"p" + std::to_string(p), "P" + std::to_string(p),
                    p % 2 == 0 ? Category::Technical : Category::Environmental, ScoreMode::AggregateSubRatings, {}};
    for (int k = 0; k < 4; ++k) param.sub_parameters.push_back({"q" + std::to_string(k), "Q", SubParameterKind::Qualitative});
    for (const auto& s : ds.subjects) {
      for (const auto& sub : param.sub_parameters) {
        ds.ratings.push_back({s.id, param.id, sub.id, static_cast<Level>(level(rng)), Provenance::Paper});
      }
    }
    ds.framework.parameters.push_back(std::move(param));
  }
  ds.weight_profiles.push_back(WeightProfile::uniform(ds.framework));
  return ds;
}

void BM_ScoreTableBundled(benchmark::State& state) {
  for (auto _ : state) {
    ScoreTable table(bundled());
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_ScoreTableBundled);

void BM_RankBundled(benchmark::State& state) {
  const ScoreTable table(bundled());
  const auto profile = bundled().default_profile();
  for (auto _ : state) benchmark::DoNotOptimize(rank(table, profile));
}
BENCHMARK(BM_RankBundled);

void BM_WhatIfBundled(benchmark::State& state) {
  WhatIfRequest req;
  req.weights["demand"] = 3.0;
  req.category = CategoryFilter::Environmental;
  req.ratings.push_back({{"python", "inheritance", "multiple_inheritance"}, Level::No});
  for (auto _ : state) benchmark::DoNotOptimize(what_if(bundled(), req));
}
BENCHMARK(BM_WhatIfBundled);

void BM_SweepBundled(benchmark::State& state) {
  const ScoreTable table(bundled());
  const auto profile = bundled().default_profile();
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(weight_sweep(table, profile, CategoryFilter::All, "demand", 1.0, 5.0, steps));
  }
}
BENCHMARK(BM_SweepBundled)->Arg(41)->Arg(1000);

void BM_DiscrepancyReport(benchmark::State& state) {
  const auto published =
      load_published_tables(std::string(LANGEVAL_BENCH_DATA_DIR) + "/paper-2023-oop.published.json");
  for (auto _ : state) benchmark::DoNotOptimize(discrepancy_report(bundled(), published));
}
BENCHMARK(BM_DiscrepancyReport);

void BM_RankSynthetic(benchmark::State& state) {
  const Dataset ds = synthetic(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const ScoreTable table(ds);
  for (auto _ : state) benchmark::DoNotOptimize(rank(table, ds.weight_profiles.front()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RankSynthetic)->Args({10, 10})->Args({100, 10})->Args({1000, 20});

void BM_ScoreTableSynthetic(benchmark::State& state) {
  const Dataset ds = synthetic(static_cast<int>(state.range(0)), 20);
  for (auto _ : state) {
    ScoreTable table(ds);
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_ScoreTableSynthetic)->Arg(100)->Arg(1000);

void BM_SaveLoadBundled(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_dataset(save_dataset(bundled())));
}
BENCHMARK(BM_SaveLoadBundled);

void BM_RenderParameterTable(benchmark::State& state) {
  ReportContext ctx;
  ctx.dataset = &bundled();
  ctx.profile = bundled().default_profile();
  const ReportSpec spec{ReportKind::ParameterTable, OutputFormat::Table, 2};
  for (auto _ : state) benchmark::DoNotOptimize(render_report(spec, ctx));
}
BENCHMARK(BM_RenderParameterTable);

}  // namespace

BENCHMARK_MAIN();
