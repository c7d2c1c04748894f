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

#include <algorithm>
#include <set>

#include "datasets.hpp"
#include "gptree/baseline.hpp"
#include "naive.hpp"

using namespace gptree;
namespace t = gptree::testing;

TEST(StrTree, PackingInvariants) {
    const auto objects = t::mixed_dataset(61, 777);
    for (std::size_t cap : {2u, 4u, 10u, 16u}) {
        const auto str = StrTree::build(objects, cap);
        ASSERT_EQ(str.size(), objects.size());
        const auto& levels = str.levels();
        ASSERT_EQ(levels.back().size(), 1u);
        std::set<ObjectId> ids;
        for (const auto& e : str.entries()) ids.insert(e.id);
        EXPECT_EQ(ids.size(), objects.size());
        for (std::size_t l = 0; l < levels.size(); ++l) {
            const std::size_t below = l == 0 ? str.entries().size() : levels[l - 1].size();
            // child ranges partition the level below
            std::vector<int> owners(below, 0);
            for (const auto& n : levels[l]) {
                ASSERT_LE(n.first + n.count, below);
                for (std::uint32_t i = n.first; i < n.first + n.count; ++i) ++owners[i];
                ASSERT_GE(n.count, 1u);
                ASSERT_LE(n.count, cap);
                Envelope u;
                for (std::uint32_t i = n.first; i < n.first + n.count; ++i) {
                    u.expand(l == 0 ? str.entries()[i].envelope : levels[l - 1][i].envelope);
                }
                ASSERT_EQ(u, n.envelope);
            }
            ASSERT_EQ(std::count(owners.begin(), owners.end(), 1), static_cast<std::ptrdiff_t>(below));
        }
        Envelope all;
        for (const auto& o : objects) all.expand(o.geometry.envelope());
        EXPECT_EQ(str.bounds(), all);
    }
}

TEST(StrTree, MemoryAccounting) {
    const auto objects = t::mixed_dataset(62, 300);
    const auto str = StrTree::build(objects);
    std::uint64_t coords = 0;
    for (const auto& o : objects) coords += o.geometry.coordinate_count();
    const std::uint64_t nodes = str.node_count();
    EXPECT_EQ(str.memory_bytes(), 40 * (objects.size() + nodes - 1) + 8 * nodes + 8 * objects.size() + 16 * coords);
}

TEST(StrTree, AnswersMatchNaiveScan) {
    const auto objects = t::mixed_dataset(63, 900);
    const auto str = StrTree::build(objects);
    for (const auto& q : t::polygon_queries(64, objects, 40, 0.05)) {
        ASSERT_EQ(str.query(q, RangeMode{Predicate::Intersects}).ids, t::naive_range(objects, q, false));
        ASSERT_EQ(str.query(q, RangeMode{Predicate::Contains}).ids, t::naive_range(objects, q, true));
        ASSERT_EQ(str.query(q, DistanceMode{0.03}).ids, t::naive_within(objects, q, 0.03));
    }
    for (const auto& q : t::point_queries(65, objects, 40)) {
        const auto got = str.query(q, KnnMode{7});
        const auto want = t::naive_knn(objects, q, 7);
        ASSERT_EQ(got.ids.size(), want.size());
        for (std::size_t i = 0; i < want.size(); ++i) ASSERT_NEAR(got.distances[i], want[i].distance, 1e-9);
    }
}

TEST(StrTree, OracleAgreesWithNaiveScan) {
    const auto objects = t::mixed_dataset(66, 300);
    for (const auto& q : t::polygon_queries(67, objects, 20, 0.05)) {
        ASSERT_EQ(oracle_query(objects, q, RangeMode{}).ids, t::naive_range(objects, q, false));
    }
    EXPECT_THROW(oracle_query(objects, objects[0].geometry, DistanceMode{0.0}), std::invalid_argument);
    EXPECT_THROW(oracle_query(objects, objects[0].geometry, KnnMode{0}), std::invalid_argument);
}

TEST(StrTree, EdgeCases) {
    EXPECT_THROW(StrTree::build({}, 1), std::invalid_argument);
    const auto empty = StrTree::build({});
    EXPECT_TRUE(empty.empty());
    EXPECT_TRUE(empty.query(Geometry::point({0, 0}), RangeMode{}).ids.empty());
    std::vector<SpatialObject> one{{5, Geometry::point({1, 1})}};
    const auto str = StrTree::build(one);
    EXPECT_EQ(str.height(), 1u);
    EXPECT_EQ(str.query(Geometry::point({1, 1}), RangeMode{}).ids, std::vector<ObjectId>{5});
    EXPECT_EQ(str.query(Geometry::point({0, 0}), KnnMode{3}).ids, std::vector<ObjectId>{5});
}
