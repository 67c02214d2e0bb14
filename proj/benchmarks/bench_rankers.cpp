#include <benchmark/benchmark.h>

#include "citepop/graph.hpp"
#include "citepop/rankers.hpp"
#include "citepop/snapshot.hpp"
#include "citepop/synthgen.hpp"

namespace {

using namespace citepop;

// One shared mid-sized corpus; the snapshot keeps every paper so ranker cost
// reflects the full node set. Pinned in place: the snapshot holds the graph
// member's address.
struct Fixture {
    CitationGraph graph;
    GraphSnapshot snapshot;
    ScoreVector base_scores;

    explicit Fixture(GraphBuild build)
        : graph(std::move(build.graph)),
          snapshot(make_snapshot(graph, MonthStamp::from_ym(1990, 1).plus_months(399), false)),
          base_scores(pagerank(snapshot)) {}
    Fixture(const Fixture&) = delete;
};

const Fixture& fixture() {
    static const Fixture f([] {
        SynthParams params;
        params.n_papers = 20000;
        params.papers_per_month = 50;
        params.refs_per_paper = 10;
        params.seed = 7;
        const SynthCorpus corpus = generate_corpus(params);
        return build_graph(corpus.records, corpus.edges);
    }());
    return f;
}

void BM_PageRank(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(pagerank(f.snapshot));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(f.snapshot.node_count()));
}

void BM_CiteRank(benchmark::State& state) {
    const Fixture& f = fixture();
    CiteRankParams params;
    params.tau = 24.0;
    params.alpha = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(citerank(f.snapshot, params));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(f.snapshot.node_count()));
}

void BM_AgeDiffusion(benchmark::State& state) {
    const Fixture& f = fixture();
    AgeDiffusionParams params;
    params.tau = 24.0;
    params.alpha = 0.74;
    for (auto _ : state) {
        benchmark::DoNotOptimize(age_diffusion(f.snapshot, params));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(f.snapshot.node_count()));
}

void BM_RescaledPageRank(benchmark::State& state) {
    const Fixture& f = fixture();
    RescaleParams params;
    params.window_size = 1000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rescaled_pagerank(f.snapshot, f.base_scores, params));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(f.snapshot.node_count()));
}

BENCHMARK(BM_PageRank)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CiteRank)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AgeDiffusion)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RescaledPageRank)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
