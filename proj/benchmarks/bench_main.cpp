#include <benchmark/benchmark.h>

#include <map>

#include "imgnn/harness.hpp"

namespace {

using namespace imgnn;

const Graph& ba_graph(int n) {
    static std::map<int, Graph> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, generate_ba(n, 2, 42)).first;
    return it->second;
}

void bm_sir_spread(benchmark::State& state) {
    const Graph& g = ba_graph(static_cast<int>(state.range(0)));
    SirConfig cfg;
    cfg.mu = 0.3;
    cfg.runs = 100;
    const std::vector<int> seeds{0};
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_spread(g, seeds, cfg).mean_fraction);
}
BENCHMARK(bm_sir_spread)->Arg(100)->Arg(500)->Arg(2000);

void bm_feature_matrix(benchmark::State& state) {
    const Graph& g = ba_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(feature_matrix(g).data.size());
}
BENCHMARK(bm_feature_matrix)->Arg(100)->Arg(500)->Arg(2000);

void bm_pagerank(benchmark::State& state) {
    const Graph& g = ba_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pagerank(g).value.back());
}
BENCHMARK(bm_pagerank)->Arg(500)->Arg(2000)->Arg(10000);

void bm_voterank(benchmark::State& state) {
    const Graph& g = ba_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(voterank(g, g.n / 10).order.size());
}
BENCHMARK(bm_voterank)->Arg(500)->Arg(2000);

void bm_model_forward(benchmark::State& state) {
    const Graph& g = ba_graph(static_cast<int>(state.range(0)));
    const FeatureMatrix f = feature_matrix(g);
    const ModelParams p = init_params(1);
    for (auto _ : state) benchmark::DoNotOptimize(model_forward(g, f, p).back());
}
BENCHMARK(bm_model_forward)->Arg(100)->Arg(500)->Arg(2000);

void bm_gradient_step(benchmark::State& state) {
    const Graph& g = ba_graph(static_cast<int>(state.range(0)));
    const FeatureMatrix f = feature_matrix(g);
    std::vector<double> labels(g.n, 0.1);
    const ModelParams p = init_params(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(loss_and_gradients(g, f, labels, p).first);
}
BENCHMARK(bm_gradient_step)->Arg(100)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
