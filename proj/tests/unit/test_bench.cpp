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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "datasets.hpp"
#include "gptree/bench/export.hpp"
#include "gptree/bench/ingest.hpp"
#include "gptree/bench/runner.hpp"
#include "gptree/bench/synthetic.hpp"
#include "gptree/error.hpp"
#include "gptree/wkt.hpp"

using namespace gptree;
using namespace gptree::bench;
namespace t = gptree::testing;

TEST(Ingest, WktLinesSkipInvalidRecords) {
    std::stringstream in;
    for (int i = 0; i < 19; ++i) in << "POINT (" << i << " 1)\n";
    in << "\n   \nPOINT (oops)\n";
    const auto r = ingest(in, InputFormat::WktLines);
    EXPECT_EQ(r.records, 20u);
    EXPECT_EQ(r.invalid, 1u);
    ASSERT_EQ(r.objects.size(), 19u);
    EXPECT_EQ(r.objects[18].id, 18u);
    ASSERT_EQ(r.warnings.size(), 1u);
    EXPECT_EQ(r.warnings[0].rfind("line 22:", 0), 0u);
}

TEST(Ingest, TooManyInvalidRecordsIsDataError) {
    std::stringstream in("POINT (1 1)\nnot wkt\nPOINT (2 2)\n");
    EXPECT_THROW(ingest(in, InputFormat::WktLines), DataError);
    EXPECT_THROW(ingest(std::filesystem::path("/nonexistent.wkt"), InputFormat::WktLines), DataError);
}

TEST(Ingest, CsvTakesIdsFromFirstColumn) {
    std::stringstream in;
    in << "id,wkt\n";
    for (int i = 0; i < 12; ++i) in << (100 + i) << ",\"LINESTRING (0 0, " << i + 1 << " 1)\"\n";
    in << "7,POINT (0 0)\n";
    in << "100,POINT (1 1)\n";  // duplicate id
    const auto r = ingest(in, InputFormat::Csv);
    ASSERT_EQ(r.objects.size(), 13u);
    EXPECT_EQ(r.objects[0].id, 100u);
    EXPECT_EQ(r.objects[12].id, 7u);
    EXPECT_EQ(r.invalid, 1u);
    std::stringstream headless("1,POINT (0 0)\n");
    EXPECT_THROW(ingest(headless, InputFormat::Csv), DataError);
    EXPECT_EQ(detect_format("a/b.csv"), InputFormat::Csv);
    EXPECT_EQ(detect_format("a/b.wkt"), InputFormat::WktLines);
}

TEST(Ingest, WktLinesRoundTrip) {
    const auto objects = t::mixed_dataset(71, 200);
    std::stringstream io;
    write_wkt_lines(io, objects);
    const auto r = ingest(io, InputFormat::WktLines);
    ASSERT_EQ(r.objects.size(), objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i) ASSERT_EQ(r.objects[i].geometry, objects[i].geometry);
}

TEST(Synthetic, DeterministicAndShaped) {
    SyntheticSpec spec;
    spec.count = 3000;
    spec.mix = {1, 2, 1};
    const auto a = generate_synthetic(spec);
    const auto b = generate_synthetic(spec);
    ASSERT_EQ(a.size(), 3000u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_EQ(a[i].id, i);
        ASSERT_EQ(a[i].geometry, b[i].geometry);
        ASSERT_TRUE(Envelope(-180, -90, 180, 90).contains(a[i].geometry.envelope()));
    }
    spec.seed = 43;
    EXPECT_NE(generate_synthetic(spec)[5].geometry, a[5].geometry);

    // line strings average 19 segments, as in the road data
    spec.mix = {0, 1, 0};
    double segments = 0;
    const auto lines = generate_synthetic(spec);
    for (const auto& o : lines) segments += static_cast<double>(o.geometry.segment_count());
    EXPECT_NEAR(segments / static_cast<double>(lines.size()), 19.0, 1.9);

    spec.count = 0;
    EXPECT_THROW(generate_synthetic(spec), std::invalid_argument);
    spec.count = 10;
    spec.mix = {0, 0, 0};
    EXPECT_THROW(generate_synthetic(spec), std::invalid_argument);
}

TEST(Synthetic, QueriesStayInsideExtent) {
    const auto objects = t::mixed_dataset(72, 100);
    const Envelope world(-180, -90, 180, 90);
    for (auto shape : {QueryShape::Polygon, QueryShape::Box, QueryShape::Point}) {
        QuerySpec spec;
        spec.shape = shape;
        spec.size = 0.05;
        for (const auto* anchors : {&objects, static_cast<const std::vector<SpatialObject>*>(nullptr)}) {
            const auto qs = generate_queries(spec, world, anchors ? *anchors : std::vector<SpatialObject>{});
            ASSERT_EQ(qs.size(), spec.count);
            for (const auto& q : qs) {
                ASSERT_TRUE(world.contains(q.envelope()));
                ASSERT_EQ(q.is_point(), shape == QueryShape::Point);
            }
        }
    }
}

TEST(Runner, CountersAndOracleCheck) {
    Workload w;
    w.objects = t::mixed_dataset(73, 800);
    w.queries = t::polygon_queries(74, w.objects, 30, 0.05);
    w.engines = {Engine::GpTree, Engine::Str, Engine::Oracle};
    const auto reports = run_benchmark(w);
    ASSERT_EQ(reports.size(), 3u);
    for (const auto& r : reports) {
        EXPECT_EQ(r.n_t + r.n_f + r.n_u, r.n_c) << r.engine;
        EXPECT_EQ(r.queries, 30u);
        EXPECT_GT(r.throughput_per_minute, 0.0);
        if (r.n_c > 0) {
            EXPECT_NEAR(r.thr + r.fhr + r.ucr, 1.0, 1e-12);
            EXPECT_DOUBLE_EQ(r.ucr, static_cast<double>(r.n_u) / static_cast<double>(r.n_c));
        }
        EXPECT_EQ(r.memory.total, r.memory.tree + r.memory.lookup + r.memory.ghsi);
    }
    EXPECT_EQ(reports[0].results, reports[1].results);
    EXPECT_EQ(reports[1].n_t, 0u);

    w.type = QueryType::Knn;
    w.k = 5;
    w.engines = {Engine::GpTree};
    w.ghsi_level = 8;
    const auto knn = run_benchmark(w);
    EXPECT_EQ(knn[0].memory.ghsi, ghsi_analytic_bytes(8));
    EXPECT_EQ(knn[0].results, 30u * 5u);

    w.type = QueryType::Distance;
    w.eps = 0.0;
    EXPECT_THROW(run_benchmark(w), std::invalid_argument);
}

TEST(Runner, LiteralRuleTripsOracleCheck) {
    const auto adv = t::adversarial_dataset();
    Workload w;
    w.objects = adv.objects;
    w.queries = {adv.query};
    w.engines = {Engine::GpTree};
    w.query_options.true_hit_rule = TrueHitRule::Literal;
    EXPECT_THROW(run_benchmark(w), CorrectnessError);
    w.query_options.true_hit_rule = TrueHitRule::Sound;
    EXPECT_NO_THROW(run_benchmark(w));
}

TEST(Export, CsvRoundTripAndJson) {
    Workload w;
    w.objects = t::mixed_dataset(75, 300);
    w.queries = t::polygon_queries(76, w.objects, 10, 0.05);
    auto reports = run_benchmark(w);
    reports[0].thr = 1.0 / 3.0;
    std::stringstream csv;
    write_csv(csv, reports);
    const auto header = csv.str().substr(0, csv.str().find('\n'));
    EXPECT_EQ(header.rfind(csv_columns().front(), 0), 0u);
    EXPECT_EQ(read_csv(csv), reports);

    std::stringstream js;
    write_json(js, reports);
    const auto j = nlohmann::json::parse(js.str());
    ASSERT_EQ(j.size(), reports.size());
    EXPECT_EQ(j[0]["engine"], reports[0].engine);
    EXPECT_EQ(j[0].size(), csv_columns().size());

    std::stringstream bad("engine,nope\n");
    EXPECT_THROW(read_csv(bad), DataError);
}
