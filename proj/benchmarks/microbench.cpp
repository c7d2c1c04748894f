/*
 * Copyright 2026 The GP-Tree Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <random>

#include "gptree/baseline.hpp"
#include "gptree/bench/synthetic.hpp"
#include "gptree/queries.hpp"

using namespace gptree;

namespace {

const std::vector<SpatialObject>& roads() {
    static const auto objects = [] {
        bench::SyntheticSpec spec;
        spec.count = 20'000;
        spec.mix = {0.0, 1.0, 0.0};
        spec.seed = 1;
        return bench::generate_synthetic(spec);
    }();
    return objects;
}

std::vector<Geometry> boxes(double size, std::size_t count = 64) {
    bench::QuerySpec spec;
    spec.count = count;
    spec.shape = bench::QueryShape::Box;
    spec.size = size;
    spec.seed = 2;
    return bench::generate_queries(spec, GridExtent{}.bounds, roads());
}

struct Built {
    GPTree tree;
    LookupTable table;
};

const Built& optimized_tree() {
    static const Built built = [] {
        auto [tree, table] = GPTree::build(roads(), DecompositionConfig{}, GridExtent{});
        node_optimization_on(tree);
        prune(tree);
        return Built{std::move(tree), std::move(table)};
    }();
    return built;
}

void BM_Encode(benchmark::State& state) {
    std::mt19937 rng(3);
    std::uint32_t col = rng() & 0xffff, row = rng() & 0xffff;
    for (auto _ : state) {
        benchmark::DoNotOptimize(encode(col, row, 16));
        col = (col + 7) & 0xffff;
        row = (row + 13) & 0xffff;
    }
}
BENCHMARK(BM_Encode);

void BM_DecomposeLine(benchmark::State& state) {
    DecompositionConfig cfg;
    cfg.seg = static_cast<std::uint32_t>(state.range(0));
    const auto& objects = roads();
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose(objects[i % objects.size()].geometry, cfg, GridExtent{}));
        ++i;
    }
}
BENCHMARK(BM_DecomposeLine)->Arg(10)->Arg(20)->Arg(35);

void BM_Build(benchmark::State& state) {
    for (auto _ : state) {
        auto built = GPTree::build(roads(), DecompositionConfig{}, GridExtent{});
        node_optimization_on(built.first);
        prune(built.first);
        benchmark::DoNotOptimize(built.first.root());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * roads().size()));
}
BENCHMARK(BM_Build)->Unit(benchmark::kMillisecond);

void BM_StrBuild(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(StrTree::build(roads()));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * roads().size()));
}
BENCHMARK(BM_StrBuild)->Unit(benchmark::kMillisecond);

void BM_GpTreeRange(benchmark::State& state) {
    const auto& built = optimized_tree();
    const QueryEngine engine(built.tree, built.table);
    const auto queries = boxes(static_cast<double>(state.range(0)) / 1000.0);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(engine.range(queries[i++ % queries.size()], Predicate::Intersects));
}
BENCHMARK(BM_GpTreeRange)->Arg(5)->Arg(22)->Unit(benchmark::kMicrosecond);

void BM_StrRange(benchmark::State& state) {
    static const auto str = StrTree::build(roads());
    const auto queries = boxes(static_cast<double>(state.range(0)) / 1000.0);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(str.query(queries[i++ % queries.size()], RangeMode{}));
}
BENCHMARK(BM_StrRange)->Arg(5)->Arg(22)->Unit(benchmark::kMicrosecond);

void BM_GpTreeKnn(benchmark::State& state) {
    const auto& built = optimized_tree();
    static const auto ghsi = Ghsi::build(roads(), 11, GridExtent{});
    const QueryEngine engine(built.tree, built.table, &ghsi);
    bench::QuerySpec spec;
    spec.shape = bench::QueryShape::Point;
    const auto queries = bench::generate_queries(spec, GridExtent{}.bounds, roads());
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(engine.knn(queries[i++ % queries.size()], static_cast<std::size_t>(state.range(0))));
    }
}
BENCHMARK(BM_GpTreeKnn)->Arg(1)->Arg(20)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
