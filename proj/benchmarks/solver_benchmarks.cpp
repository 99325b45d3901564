#include <benchmark/benchmark.h>

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "iqbf/bench.hpp"
#include "iqbf/qdimacs.hpp"
#include "iqbf/solver.hpp"

using namespace iqbf;

namespace {

const std::vector<NamedFormula>& instances() {
  static const std::vector<NamedFormula> all = [] {
    std::vector<NamedFormula> v;
    for (const auto& e : std::filesystem::directory_iterator(IQBF_BENCH_INSTANCES))
      if (e.path().extension() == ".qdimacs")
        v.push_back({e.path().filename().string(), read_qdimacs_file(e.path().string())});
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return v;
  }();
  return all;
}

void BM_ParseQdimacs(benchmark::State& state) {
  const std::string text = write_qdimacs(instances().at(static_cast<std::size_t>(state.range(0))).formula);
  for (auto _ : state) benchmark::DoNotOptimize(parse_qdimacs(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseQdimacs)->DenseRange(0, 3);

void BM_SolveStatic(benchmark::State& state) {
  const Pcnf& f = instances().at(static_cast<std::size_t>(state.range(0))).formula;
  for (auto _ : state) {
    Solver s(f);
    benchmark::DoNotOptimize(s.solve());
    state.counters["backtracks"] = static_cast<double>(s.stats().backtracks);
  }
}
BENCHMARK(BM_SolveStatic)->DenseRange(0, 23, 4)->Unit(benchmark::kMillisecond);

void BM_SlicedSequence(benchmark::State& state) {
  const Pcnf& f = instances().at(static_cast<std::size_t>(state.range(0))).formula;
  const bool keep = state.range(1) != 0;
  for (auto _ : state) {
    const SequenceRun run = run_sequence(f, 10, keep, {});
    state.counters["fwd_backtracks"] = static_cast<double>(totals(run.forward).backtracks);
    state.counters["rev_backtracks"] = static_cast<double>(totals(run.reverse).backtracks);
  }
}
BENCHMARK(BM_SlicedSequence)
    ->ArgsProduct({{0, 8, 16}, {0, 1}})
    ->ArgNames({"instance", "keep"})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
