#include <benchmark/benchmark.h>

#include "citepop/future_popularity.hpp"
#include "citepop/graph.hpp"
#include "citepop/snapshot.hpp"
#include "citepop/synthgen.hpp"

namespace {

using namespace citepop;

const SynthCorpus& corpus() {
    static const SynthCorpus c = [] {
        SynthParams params;
        params.n_papers = 20000;
        params.papers_per_month = 50;
        params.refs_per_paper = 10;
        params.seed = 7;
        return generate_corpus(params);
    }();
    return c;
}

void BM_BuildGraph(benchmark::State& state) {
    const SynthCorpus& c = corpus();
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_graph(c.records, c.edges));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(c.edges.size()));
}

void BM_MakeSnapshot(benchmark::State& state) {
    const SynthCorpus& c = corpus();
    static const CitationGraph graph = [&] {
        GraphBuild build = build_graph(c.records, c.edges);
        return std::move(build.graph);
    }();
    const MonthStamp t = MonthStamp::from_ym(1990, 1).plus_months(319); // 80% mark
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_snapshot(graph, t, true));
    }
}

void BM_FuturePopularity(benchmark::State& state) {
    const SynthCorpus& c = corpus();
    static const CitationGraph graph = [&] {
        GraphBuild build = build_graph(c.records, c.edges);
        return std::move(build.graph);
    }();
    static const GraphSnapshot snapshot =
        make_snapshot(graph, MonthStamp::from_ym(1990, 1).plus_months(319), true);
    for (auto _ : state) {
        benchmark::DoNotOptimize(future_popularity(snapshot, 16));
    }
}

BENCHMARK(BM_BuildGraph)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MakeSnapshot)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FuturePopularity)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
