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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gptree/baseline.hpp"
#include "gptree/geometry.hpp"
#include "gptree/grid.hpp"
#include "gptree/queries.hpp"

namespace gptree::bench {

enum class Engine { GpTree, Str, Oracle };
const char* to_string(Engine engine);

struct Workload {
    std::string label = "workload";
    std::vector<SpatialObject> objects;
    std::vector<Geometry> queries;
    QueryType type = QueryType::Range;
    Predicate predicate = Predicate::Intersects;
    double eps = 0.03;
    std::size_t k = 20;
    std::vector<Engine> engines{Engine::GpTree, Engine::Str};
    std::size_t repetitions = 1;
    std::size_t workers = 1;
    DecompositionConfig config;
    QueryOptions query_options;
    GridExtent extent;
    int ghsi_level = 11;
    std::size_t str_capacity = StrTree::kDefaultCapacity;
    /// Node optimization and pruning for the GP-Tree engine.
    bool optimize = true;
    /// Compare every engine against the oracle before reporting.
    bool check = true;

    /// Throws std::invalid_argument on eps <= 0, k == 0, no engines or no workers.
    void validate() const;
};

struct MemoryBreakdown {
    std::uint64_t tree = 0;
    std::uint64_t lookup = 0;
    std::uint64_t ghsi = 0;
    std::uint64_t total = 0;

    friend bool operator==(const MemoryBreakdown&, const MemoryBreakdown&) = default;
};

/// One row per engine and workload. Counters cover one pass over the queries.
/// For the GP-Tree n_c counts cell-overlap candidates; for the STR-Tree it counts
/// envelope-overlap leaf entries, all of which are refined (n_t = n_f = 0).
struct MetricsReport {
    std::string engine;
    std::string label;
    std::string type;
    std::string parameter;  // theta, eps or k, as text
    std::uint32_t seg = 0;
    std::uint64_t queries = 0;
    std::uint64_t repetitions = 0;
    std::uint64_t workers = 0;
    double throughput_per_minute = 0.0;
    double mean_latency_micros = 0.0;
    double thr = 0.0;
    double fhr = 0.0;
    double ucr = 0.0;
    std::uint64_t n_c = 0;
    std::uint64_t n_t = 0;
    std::uint64_t n_f = 0;
    std::uint64_t n_u = 0;
    std::uint64_t results = 0;
    std::uint64_t indexed_cells = 0;
    std::uint64_t step3_cells = 0;
    double filter_micros = 0.0;
    double refine_micros = 0.0;
    double total_micros = 0.0;
    double build_millis = 0.0;
    MemoryBreakdown memory;

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Builds each engine, runs an untimed warm-up pass, then `repetitions` timed
/// passes spread over `workers` threads. With `check` set, the answers of
/// every engine must equal the oracle's, otherwise CorrectnessError names the
/// first differing query.
std::vector<MetricsReport> run_benchmark(const Workload& w);

}  // namespace gptree::bench
