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

// gptree command-line tool: synthetic data generation, index snapshots,
// ad-hoc queries and benchmark workloads.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "gptree/baseline.hpp"
#include "gptree/bench/export.hpp"
#include "gptree/bench/ingest.hpp"
#include "gptree/bench/runner.hpp"
#include "gptree/bench/synthetic.hpp"
#include "gptree/error.hpp"
#include "gptree/queries.hpp"
#include "gptree/snapshot.hpp"
#include "gptree/tree.hpp"
#include "gptree/wkt.hpp"

namespace {

using namespace gptree;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitDivergence = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("gptree");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("GPTREE_LOG")) {
        const auto level = spdlog::level::from_str(env);
        // from_str maps unknown names to "off"; only honour it when asked for
        if (level != spdlog::level::off || std::string_view(env) == "off") spdlog::set_level(level);
    }
}

Envelope parse_extent(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            v.push_back(std::stod(part));
        } catch (const std::exception&) {
            throw UsageError("--extent expects minx,miny,maxx,maxy");
        }
    }
    if (v.size() != 4) throw UsageError("--extent expects minx,miny,maxx,maxy");
    return {v[0], v[1], v[2], v[3]};
}

std::vector<SpatialObject> load_objects(const std::string& path) {
    auto result = bench::ingest(path, bench::detect_format(path));
    for (const auto& w : result.warnings) spdlog::warn("{}: {}", path, w);
    spdlog::info("loaded {} objects from {} ({} invalid)", result.objects.size(), path, result.invalid);
    return std::move(result.objects);
}

std::vector<Geometry> load_queries(const std::string& path) {
    std::vector<Geometry> out;
    for (auto& o : load_objects(path)) out.push_back(std::move(o.geometry));
    return out;
}

QueryType parse_type(const std::string& t) {
    if (t == "range") return QueryType::Range;
    if (t == "dist") return QueryType::Distance;
    return QueryType::Knn;
}

Predicate parse_theta(const std::string& t) { return t == "contains" ? Predicate::Contains : Predicate::Intersects; }

std::vector<bench::Engine> parse_engines(const std::string& e) {
    if (e == "gptree") return {bench::Engine::GpTree};
    if (e == "str") return {bench::Engine::Str};
    if (e == "oracle") return {bench::Engine::Oracle};
    return {bench::Engine::GpTree, bench::Engine::Str, bench::Engine::Oracle};
}

nlohmann::ordered_json stats_json(const TreeStats& s) {
    return {{"height", s.height},         {"nodeCount", s.node_count},   {"leafCount", s.leaf_count},
            {"ilEntries", s.il_entries},  {"blEntries", s.bl_entries},   {"ulEntries", s.ul_entries},
            {"treeBytes", s.tree_bytes},  {"lookupBytes", s.lookup_bytes}, {"memoryBytes", s.memory_bytes}};
}

struct IndexOptions {
    std::uint32_t seg = 20;
    int max_level = 16;
    int point_level = 16;
    int envelope_depth = DecompositionConfig{}.envelope_depth;
    std::optional<int> query_depth = QueryOptions{}.query_envelope_depth;
    std::string extent = "-180,-90,180,90";
    bool no_optimize = false;

    void add(CLI::App& app) {
        app.add_option("--seg", seg, "Max segments per boundary cell")->check(CLI::PositiveNumber);
        app.add_option("--max-level", max_level, "Deepest decomposition level")->check(CLI::Range(1, 30));
        app.add_option("--point-level", point_level, "Level of point cells")->check(CLI::Range(1, 30));
        app.add_option("--envelope-depth", envelope_depth, "Boundary levels below the envelope-sized cell")
            ->check(CLI::Range(0, 30));
        app.add_option("--query-envelope-depth", query_depth, "Envelope depth for query geometries")
            ->check(CLI::Range(0, 30));
        app.add_option("--extent", extent, "Grid extent minx,miny,maxx,maxy");
        app.add_flag("--no-optimize", no_optimize, "Skip node optimization and pruning");
    }

    DecompositionConfig config() const {
        DecompositionConfig c{seg, max_level, point_level, envelope_depth};
        try {
            c.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return c;
    }

    GridExtent grid() const {
        try {
            return GridExtent(parse_extent(extent));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
};

int cmd_gen(const std::string& out, const std::string& what, std::size_t count, const std::string& mix,
            std::uint64_t seed, std::size_t clusters, double avg_segments, double object_size,
            const std::string& shape, double query_size, const std::string& data, const std::string& extent) {
    const Envelope ext = parse_extent(extent);
    std::vector<SpatialObject> objects;
    if (what == "data") {
        bench::SyntheticSpec spec;
        spec.count = count;
        spec.extent = ext;
        spec.seed = seed;
        spec.cluster_count = clusters;
        spec.avg_segments = avg_segments;
        spec.object_size = object_size;
        std::vector<double> w;
        std::stringstream ss(mix);
        std::string part;
        while (std::getline(ss, part, ',')) w.push_back(std::stod(part));
        if (w.size() != 3) throw UsageError("--mix expects point,line,polygon weights");
        spec.mix = {w[0], w[1], w[2]};
        objects = bench::generate_synthetic(spec);
    } else {
        bench::QuerySpec spec;
        spec.count = count;
        spec.seed = seed;
        spec.size = query_size;
        spec.shape = shape == "point" ? bench::QueryShape::Point
                     : shape == "box" ? bench::QueryShape::Box
                                      : bench::QueryShape::Polygon;
        const auto anchors = data.empty() ? std::vector<SpatialObject>{} : load_objects(data);
        ObjectId id = 0;
        for (auto& g : bench::generate_queries(spec, ext, anchors)) objects.push_back({id++, std::move(g)});
    }
    if (out.empty() || out == "-") {
        bench::write_wkt_lines(std::cout, objects);
    } else {
        std::ofstream f(out);
        if (!f) throw DataError("cannot write " + out);
        bench::write_wkt_lines(f, objects);
        spdlog::info("wrote {} geometries to {}", objects.size(), out);
    }
    return kExitOk;
}

int cmd_build(const std::string& data, const std::string& out, const IndexOptions& idx) {
    const auto objects = load_objects(data);
    auto [tree, table] = GPTree::build(objects, idx.config(), idx.grid());
    nlohmann::ordered_json report;
    report["objects"] = objects.size();
    report["basic"] = stats_json(stats(tree, &table));
    if (!idx.no_optimize) {
        node_optimization_on(tree);
        prune(tree);
        report["optimized"] = stats_json(stats(tree, &table));
    }
    if (!out.empty()) {
        save_snapshot(tree, table, std::filesystem::path(out));
        report["snapshot"] = out;
    }
    std::cout << report.dump() << '\n';
    return kExitOk;
}

int cmd_query(const std::string& data, const std::string& index, const std::string& query_wkt,
              const std::string& type, const std::string& theta, double eps, std::size_t k, int ghsi_level,
              const std::string& engine, bool diagnostics, const IndexOptions& idx) {
    if (query_wkt.empty()) throw UsageError("--query is required");
    if (data.empty() && index.empty()) throw UsageError("either --data or --index is required");
    const Geometry q = parse_wkt(query_wkt);
    std::optional<std::pair<GPTree, LookupTable>> built;
    std::vector<SpatialObject> objects;
    if (!index.empty()) {
        built.emplace(load_snapshot(std::filesystem::path(index)));
        for (const auto& [id, e] : built->second) objects.push_back({id, e.geometry});
        std::sort(objects.begin(), objects.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    } else {
        objects = load_objects(data);
        built.emplace(GPTree::build(objects, idx.config(), idx.grid()));
        if (!idx.no_optimize) {
            node_optimization_on(built->first);
            prune(built->first);
        }
    }
    const QueryType qt = parse_type(type);
    QueryMode mode = RangeMode{parse_theta(theta)};
    if (qt == QueryType::Distance) mode = DistanceMode{eps};
    if (qt == QueryType::Knn) mode = KnnMode{k};

    for (auto e : parse_engines(engine)) {
        QueryRecord rec;
        rec.engine = bench::to_string(e);
        rec.type = qt;
        const auto t0 = std::chrono::steady_clock::now();
        if (e == bench::Engine::GpTree) {
            std::optional<Ghsi> ghsi;
            if (qt == QueryType::Knn) ghsi.emplace(Ghsi::build(objects, ghsi_level, built->first.extent()));
            QueryEngine gp(built->first, built->second, ghsi ? &*ghsi : nullptr, QueryOptions{{}, idx.query_depth});
            std::vector<CandidateMatch> cands;
            auto* diag = diagnostics ? &cands : nullptr;
            switch (qt) {
                case QueryType::Range:
                    rec.result_ids = gp.range(q, parse_theta(theta), nullptr, diag);
                    break;
                case QueryType::Distance:
                    rec.result_ids = gp.within_distance(q, eps, nullptr, diag);
                    break;
                case QueryType::Knn:
                    for (const auto& n : gp.knn(q, k)) {
                        rec.result_ids.push_back(n.id);
                        rec.distances.push_back(n.distance);
                    }
                    break;
            }
            rec.candidates = std::move(cands);
        } else {
            QueryAnswer a = e == bench::Engine::Str ? StrTree::build(objects).query(q, mode)
                                                    : oracle_query(objects, q, mode);
            rec.result_ids = std::move(a.ids);
            rec.distances = std::move(a.distances);
        }
        rec.elapsed_micros =
            std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
        std::cout << to_json_line(rec) << '\n';
    }
    return kExitOk;
}

int cmd_bench(const std::string& data, const std::string& queries, const std::string& type,
              const std::string& theta, double eps, std::size_t k, int ghsi_level, const std::string& engine,
              std::size_t workers, std::size_t repetitions, std::uint64_t seed, std::size_t query_count,
              double query_size, const std::string& out, const std::string& format, bool no_check,
              const IndexOptions& idx) {
    if (data.empty()) throw UsageError("--data is required");
    bench::Workload w;
    w.label = std::filesystem::path(data).stem().string();
    w.objects = load_objects(data);
    w.type = parse_type(type);
    w.predicate = parse_theta(theta);
    w.eps = eps;
    w.k = k;
    w.ghsi_level = ghsi_level;
    w.engines = parse_engines(engine);
    w.workers = workers;
    w.repetitions = repetitions;
    w.config = idx.config();
    w.query_options.query_envelope_depth = idx.query_depth;
    w.extent = idx.grid();
    w.optimize = !idx.no_optimize;
    w.check = !no_check;
    if (!queries.empty()) {
        w.queries = load_queries(queries);
    } else {
        bench::QuerySpec spec;
        spec.count = query_count;
        spec.seed = seed;
        spec.size = query_size;
        spec.shape = w.type == QueryType::Knn ? bench::QueryShape::Point : bench::QueryShape::Polygon;
        w.queries = bench::generate_queries(spec, w.extent.bounds, w.objects);
    }
    try {
        w.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    spdlog::info("running {} {} queries over {} objects", w.queries.size(), type, w.objects.size());
    const auto reports = bench::run_benchmark(w);
    const auto fmt_kind = format == "csv" ? bench::ExportFormat::Csv : bench::ExportFormat::Json;
    if (out.empty() || out == "-") {
        if (fmt_kind == bench::ExportFormat::Csv) {
            bench::write_csv(std::cout, reports);
        } else {
            bench::write_json(std::cout, reports);
        }
    } else {
        bench::export_reports(reports, fmt_kind, out);
        spdlog::info("wrote {} report rows to {}", reports.size(), out);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"GP-Tree spatial index tool"};
    app.require_subcommand(1);

    IndexOptions idx;
    std::string data, queries, out, type = "range", theta = "intersects", engine = "gptree", format = "json";
    std::string extent = "-180,-90,180,90", index, query_wkt;
    double eps = 0.03;
    std::size_t k = 20;
    int ghsi_level = 11;
    std::size_t workers = 1, repetitions = 1;
    std::uint64_t seed = 42;

    auto* gen = app.add_subcommand("gen", "Generate synthetic objects or queries as WKT lines");
    std::string what = "data", mix = "0,1,0", shape = "polygon";
    std::size_t count = 1000, clusters = 8, query_count = 100;
    double avg_segments = 19.0, object_size = 0.005, query_size = 0.03;
    gen->add_option("--what", what, "data or queries")->check(CLI::IsMember({"data", "queries"}));
    gen->add_option("--count", count, "Number of geometries")->check(CLI::PositiveNumber);
    gen->add_option("--mix", mix, "Kind weights point,line,polygon");
    gen->add_option("--clusters", clusters, "Cluster count (0 = uniform)");
    gen->add_option("--avg-segments", avg_segments, "Mean segments per line or ring");
    gen->add_option("--object-size", object_size, "Object diameter as a fraction of the extent width");
    gen->add_option("--shape", shape, "Query shape")->check(CLI::IsMember({"polygon", "box", "point"}));
    gen->add_option("--query-size", query_size, "Query diameter as a fraction of the extent width");
    gen->add_option("--data", data, "Dataset whose objects anchor generated queries");
    gen->add_option("--seed", seed, "Random seed");
    gen->add_option("--extent", extent, "Extent minx,miny,maxx,maxy");
    gen->add_option("--out", out, "Output file (default stdout)");

    auto* build = app.add_subcommand("build", "Build an index, print its statistics, optionally save a snapshot");
    build->add_option("--data", data, "Dataset (WKT lines or id,wkt CSV)")->required();
    build->add_option("--out", out, "Snapshot path");
    idx.add(*build);

    auto* query = app.add_subcommand("query", "Run one ad-hoc query and print JSON lines");
    query->add_option("--data", data, "Dataset (WKT lines or id,wkt CSV)");
    query->add_option("--index", index, "Snapshot written by build");
    query->add_option("--query", query_wkt, "Query geometry as WKT")->required();
    query->add_option("--type", type)->check(CLI::IsMember({"range", "dist", "knn"}));
    query->add_option("--theta", theta)->check(CLI::IsMember({"intersects", "contains"}));
    query->add_option("--eps", eps);
    query->add_option("--k", k);
    query->add_option("--ghsi-level", ghsi_level)->check(CLI::Range(1, 30));
    query->add_option("--engine", engine)->check(CLI::IsMember({"gptree", "str", "oracle", "all"}));
    bool diagnostics = false;
    query->add_flag("--diagnostics", diagnostics, "Include per-candidate filter output");
    idx.add(*query);

    auto* benchmark = app.add_subcommand("bench", "Run a benchmark workload with the oracle gate");
    bool no_check = false;
    benchmark->add_option("--data", data, "Dataset (WKT lines or id,wkt CSV)")->required();
    benchmark->add_option("--queries", queries, "Query file; generated when absent");
    benchmark->add_option("--query-count", query_count, "Generated query count");
    benchmark->add_option("--query-size", query_size, "Generated query diameter as a fraction of the extent width");
    benchmark->add_option("--type", type)->check(CLI::IsMember({"range", "dist", "knn"}));
    benchmark->add_option("--theta", theta)->check(CLI::IsMember({"intersects", "contains"}));
    benchmark->add_option("--eps", eps);
    benchmark->add_option("--k", k);
    benchmark->add_option("--ghsi-level", ghsi_level)->check(CLI::Range(1, 30));
    benchmark->add_option("--engine", engine)->check(CLI::IsMember({"gptree", "str", "oracle", "all"}));
    benchmark->add_option("--workers", workers)->check(CLI::PositiveNumber);
    benchmark->add_option("--repetitions", repetitions)->check(CLI::PositiveNumber);
    benchmark->add_option("--seed", seed);
    benchmark->add_option("--out", out, "Report file (default stdout)");
    benchmark->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    benchmark->add_flag("--no-check", no_check, "Skip the oracle comparison");
    idx.add(*benchmark);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) {
            return cmd_gen(out, what, count, mix, seed, clusters, avg_segments, object_size, shape, query_size,
                           data, extent);
        }
        if (*build) return cmd_build(data, out, idx);
        if (*query) {
            return cmd_query(data, index, query_wkt, type, theta, eps, k, ghsi_level, engine, diagnostics, idx);
        }
        return cmd_bench(data, queries, type, theta, eps, k, ghsi_level, engine, workers, repetitions, seed,
                         query_count, query_size, out, format, no_check, idx);
    } catch (const UsageError& e) {
        spdlog::error("{}", e.what());
        return kExitUsage;
    } catch (const CorrectnessError& e) {
        spdlog::error("{} (query {})", e.what(), e.query_id());
        std::cerr << "divergence at query " << e.query_id() << '\n';
        return kExitDivergence;
    } catch (const std::invalid_argument& e) {
        spdlog::error("{}", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kExitData;
    }
}
