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

#include "gptree/bench/runner.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "gptree/error.hpp"
#include "gptree/tree.hpp"

namespace gptree::bench {

namespace {

using Clock = std::chrono::steady_clock;
using Answerer = std::function<QueryAnswer(const Geometry&, QueryStats*)>;

QueryMode mode_of(const Workload& w) {
    switch (w.type) {
        case QueryType::Range:
            return RangeMode{w.predicate};
        case QueryType::Distance:
            return DistanceMode{w.eps};
        case QueryType::Knn:
            return KnnMode{w.k};
    }
    return RangeMode{w.predicate};
}

std::string parameter_of(const Workload& w) {
    switch (w.type) {
        case QueryType::Range:
            return w.predicate == Predicate::Contains ? "contains" : "intersects";
        case QueryType::Distance:
            return fmt::format("{}", w.eps);
        case QueryType::Knn:
            return fmt::format("{}", w.k);
    }
    return {};
}

double ratio(std::uint64_t a, std::uint64_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); }

struct Pass {
    std::vector<QueryAnswer> answers;
    QueryStats stats;
    double wall_micros = 0.0;
    double latency_micros = 0.0;
};

Pass run_pass(const Answerer& answer, const std::vector<Geometry>& queries, std::size_t workers, bool keep) {
    Pass pass;
    if (keep) pass.answers.resize(queries.size());
    std::vector<QueryStats> stats(workers);
    std::vector<double> latency(workers, 0.0);
    auto work = [&](std::size_t t) {
        for (std::size_t i = t; i < queries.size(); i += workers) {
            const auto t0 = Clock::now();
            QueryAnswer a = answer(queries[i], &stats[t]);
            latency[t] += std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
            if (keep) pass.answers[i] = std::move(a);
        }
    };
    const auto t0 = Clock::now();
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t);
    }
    pass.wall_micros = std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
    for (std::size_t t = 0; t < workers; ++t) {
        pass.stats.merge(stats[t]);
        pass.latency_micros += latency[t];
    }
    return pass;
}

}  // namespace

const char* to_string(Engine engine) {
    switch (engine) {
        case Engine::GpTree:
            return "gptree";
        case Engine::Str:
            return "str";
        case Engine::Oracle:
            return "oracle";
    }
    return "gptree";
}

void Workload::validate() const {
    if (type == QueryType::Distance && !(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (type == QueryType::Knn && k == 0) throw std::invalid_argument("k must be positive");
    if (engines.empty()) throw std::invalid_argument("no engine selected");
    if (workers == 0) throw std::invalid_argument("workers must be positive");
    if (repetitions == 0) throw std::invalid_argument("repetitions must be positive");
    config.validate();
}

std::vector<MetricsReport> run_benchmark(const Workload& w) {
    w.validate();
    const QueryMode mode = mode_of(w);

    std::vector<QueryAnswer> expected;
    if (w.check) {
        expected.reserve(w.queries.size());
        for (const auto& q : w.queries) expected.push_back(oracle_query(w.objects, q, mode));
    }

    std::vector<MetricsReport> reports;
    for (Engine engine : w.engines) {
        MetricsReport r;
        r.engine = to_string(engine);
        r.label = w.label;
        r.type = to_string(w.type);
        r.parameter = parameter_of(w);
        r.seg = w.config.seg;
        r.queries = w.queries.size();
        r.repetitions = w.repetitions;
        r.workers = w.workers;

        std::optional<GPTree> tree;
        std::optional<LookupTable> table;
        std::optional<Ghsi> ghsi;
        std::optional<QueryEngine> gp;
        std::optional<StrTree> str;
        Answerer answer;

        const auto b0 = Clock::now();
        switch (engine) {
            case Engine::GpTree: {
                auto built = GPTree::build(w.objects, w.config, w.extent);
                tree.emplace(std::move(built.first));
                table.emplace(std::move(built.second));
                if (w.optimize) {
                    node_optimization_on(*tree);
                    prune(*tree);
                }
                if (w.type == QueryType::Knn) ghsi.emplace(Ghsi::build(w.objects, w.ghsi_level, w.extent));
                gp.emplace(*tree, *table, ghsi ? &*ghsi : nullptr, w.query_options);
                answer = [&, type = w.type](const Geometry& q, QueryStats* s) {
                    switch (type) {
                        case QueryType::Range:
                            return QueryAnswer{gp->range(q, w.predicate, s), {}};
                        case QueryType::Distance:
                            return QueryAnswer{gp->within_distance(q, w.eps, s), {}};
                        case QueryType::Knn: {
                            QueryAnswer a;
                            for (const auto& n : gp->knn(q, w.k, s)) {
                                a.ids.push_back(n.id);
                                a.distances.push_back(n.distance);
                            }
                            return a;
                        }
                    }
                    return QueryAnswer{};
                };
                break;
            }
            case Engine::Str:
                str.emplace(StrTree::build(w.objects, w.str_capacity));
                answer = [&](const Geometry& q, QueryStats* s) { return str->query(q, mode, s); };
                break;
            case Engine::Oracle:
                answer = [&](const Geometry& q, QueryStats* s) {
                    QueryAnswer a = oracle_query(w.objects, q, mode);
                    if (s) {
                        s->candidates += w.objects.size();
                        s->refined += w.objects.size();
                        s->results += a.ids.size();
                    }
                    return a;
                };
                break;
        }
        r.build_millis = std::chrono::duration<double, std::milli>(Clock::now() - b0).count();

        if (tree) {
            const auto st = stats(*tree, &*table);
            r.memory.tree = st.tree_bytes;
            r.memory.lookup = st.lookup_bytes;
            for (const auto& [id, e] : *table) r.indexed_cells += e.cells.size();
        }
        if (ghsi) r.memory.ghsi = ghsi->analytic_bytes();
        if (str) r.memory.tree = str->memory_bytes();
        r.memory.total = r.memory.tree + r.memory.lookup + r.memory.ghsi;

        // warm-up pass: untimed, provides the answers and the counters
        Pass warm = run_pass(answer, w.queries, 1, true);
        if (w.check) {
            for (std::size_t i = 0; i < w.queries.size(); ++i) {
                if (!(warm.answers[i] == expected[i])) {
                    throw CorrectnessError(
                        fmt::format("engine {} diverges from the oracle on query {}", r.engine, i), i);
                }
            }
        }
        const QueryStats& c = warm.stats;
        r.n_c = c.candidates;
        r.n_t = c.true_hits;
        r.n_f = c.false_hits;
        r.n_u = c.refined;
        r.results = c.results;
        r.step3_cells = c.step3_cells;
        r.thr = ratio(r.n_t, r.n_c);
        r.fhr = ratio(r.n_f, r.n_c);
        r.ucr = ratio(r.n_u, r.n_c);

        double wall = 0.0;
        double latency = 0.0;
        QueryStats timed;
        for (std::size_t rep = 0; rep < w.repetitions; ++rep) {
            Pass p = run_pass(answer, w.queries, w.workers, false);
            wall += p.wall_micros;
            latency += p.latency_micros;
            timed.merge(p.stats);
        }
        const double reps = static_cast<double>(w.repetitions);
        const double executed = static_cast<double>(w.queries.size()) * reps;
        r.throughput_per_minute = wall > 0.0 ? executed / (wall / 60e6) : 0.0;
        r.mean_latency_micros = executed > 0.0 ? latency / executed : 0.0;
        r.filter_micros = timed.filter_micros / reps;
        r.refine_micros = timed.refine_micros / reps;
        r.total_micros = latency / reps;
        reports.push_back(std::move(r));
    }
    return reports;
}

}  // namespace gptree::bench
