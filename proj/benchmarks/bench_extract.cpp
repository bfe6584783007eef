#include <benchmark/benchmark.h>

#include "portkit/browser_history.hpp"
#include "portkit/engine.hpp"
#include "portkit/gslh.hpp"
#include "portkit/simulator.hpp"

using namespace portkit;

namespace {

const sim::GslhSimulation& gslh_package() {
  static const auto s = sim::simulate_gslh({});
  return s;
}

const Bytes& gslh_zip() {
  static const Bytes b = write_zip(gslh_package().archive);
  return b;
}

sim::BrowserSimulation browser_package(std::size_t n) {
  sim::BrowserSimConfig cfg;
  cfg.n_visits = n;
  return sim::simulate_browser(cfg);
}

}  // namespace

static void BM_OpenZip(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(open_archive(gslh_zip(), "takeout.zip"));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * gslh_zip().size()));
}
BENCHMARK(BM_OpenZip);

static void BM_ParseSemanticMonths(benchmark::State& state) {
  const auto archive = open_archive(gslh_zip(), "takeout.zip");
  for (auto _ : state) benchmark::DoNotOptimize(parse_semantic_months(archive));
}
BENCHMARK(BM_ParseSemanticMonths);

static void BM_SummarizeYears(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gslh::summarize_years(gslh_package().months));
}
BENCHMARK(BM_SummarizeYears);

static void BM_ProfileTable(benchmark::State& state) {
  const auto s = browser_package(static_cast<std::size_t>(state.range(0)));
  const auto zone = TimeZone::load("Europe/Amsterdam");
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        browser::build_profile_table(s.visits, browser::CurfewWindow{}, browser::NewsSiteList::dutch_default(), zone));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ProfileTable)->Arg(1000)->Arg(100000);

static void BM_EngineBrowserEndToEnd(benchmark::State& state) {
  const Bytes zip = write_zip(browser_package(static_cast<std::size_t>(state.range(0))).archive);
  const Engine engine;
  for (auto _ : state) benchmark::DoNotOptimize(engine.run_extractor("browser-history", zip, "Takeout.zip"));
}
BENCHMARK(BM_EngineBrowserEndToEnd)->Arg(1000)->Arg(100000);

static void BM_CanonicalSerialize(benchmark::State& state) {
  const Engine engine;
  const auto result = engine.run_extractor("gslh", gslh_zip(), "takeout.zip");
  for (auto _ : state) benchmark::DoNotOptimize(canonical_json(result));
}
BENCHMARK(BM_CanonicalSerialize);

BENCHMARK_MAIN();
