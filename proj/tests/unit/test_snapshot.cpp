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

#include <sstream>

#include "datasets.hpp"
#include "gptree/error.hpp"
#include "gptree/queries.hpp"
#include "gptree/snapshot.hpp"

using namespace gptree;
namespace t = gptree::testing;

namespace {

std::string snapshot_of(const GPTree& tree, const LookupTable& table) {
    std::ostringstream out;
    save_snapshot(tree, table, out);
    return out.str();
}

}  // namespace

class SnapshotStages : public ::testing::TestWithParam<int> {};

TEST_P(SnapshotStages, RoundTripPreservesStatsAndAnswers) {
    const auto objects = t::mixed_dataset(31, 400);
    DecompositionConfig cfg;
    cfg.seg = 12;
    cfg.envelope_depth = 2;
    auto [tree, table] = GPTree::build(objects, cfg, GridExtent{});
    if (GetParam() >= 1) node_optimization_on(tree);
    if (GetParam() >= 2) prune(tree);

    std::istringstream in(snapshot_of(tree, table));
    auto [loaded, loaded_table] = load_snapshot(in);
    EXPECT_EQ(stats(loaded, &loaded_table), stats(tree, &table));
    EXPECT_EQ(loaded.config(), tree.config());
    EXPECT_EQ(loaded.extent(), tree.extent());
    EXPECT_EQ(loaded.optimized(), tree.optimized());
    EXPECT_EQ(loaded.pruned(), tree.pruned());
    for (const auto& o : objects) {
        ASSERT_EQ(loaded_table.at(o.id).geometry, table.at(o.id).geometry);
        ASSERT_EQ(loaded_table.at(o.id).cells, table.at(o.id).cells);
    }
    // saving the loaded index reproduces the same bytes
    EXPECT_EQ(snapshot_of(loaded, loaded_table), snapshot_of(tree, table));

    for (const auto& q : t::polygon_queries(32, objects, 30, 0.05)) {
        ASSERT_EQ(range_query(loaded, loaded_table, q, Predicate::Intersects),
                  range_query(tree, table, q, Predicate::Intersects));
    }
}

INSTANTIATE_TEST_SUITE_P(Stages, SnapshotStages, ::testing::Values(0, 1, 2));

TEST(Snapshot, RejectsForeignAndTruncatedStreams) {
    std::istringstream empty("");
    EXPECT_THROW(load_snapshot(empty), DataError);
    std::istringstream foreign("NOPE and some more bytes to read");
    EXPECT_THROW(load_snapshot(foreign), DataError);

    const auto objects = t::mixed_dataset(33, 50);
    auto [tree, table] = GPTree::build(objects, DecompositionConfig{}, GridExtent{});
    const auto bytes = snapshot_of(tree, table);
    for (std::size_t cut : {std::size_t{3}, std::size_t{8}, bytes.size() / 3, bytes.size() / 2, bytes.size() - 1}) {
        std::istringstream in(bytes.substr(0, cut));
        EXPECT_THROW(load_snapshot(in), DataError) << "cut at " << cut;
    }
    EXPECT_THROW(load_snapshot(std::filesystem::path("/nonexistent/index.gpt")), DataError);
}
