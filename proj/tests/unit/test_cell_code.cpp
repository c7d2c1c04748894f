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

#include <random>
#include <set>
#include <stdexcept>

#include "gptree/cell_code.hpp"
#include "naive.hpp"

using namespace gptree;
using gptree::testing::naive_interleave;

TEST(CellCode, RootIsEmptyCode) {
    const CellCode root = CellCode::root();
    EXPECT_EQ(root.level(), 0);
    EXPECT_EQ(root.to_string(), "");
    EXPECT_EQ(root.key(), 1u);
    EXPECT_THROW(root.parent(), std::out_of_range);
}

TEST(CellCode, TextRoundTrip) {
    const CellCode c = CellCode::from_string("10100011");
    EXPECT_EQ(c.level(), 4);
    EXPECT_EQ(c.bits(), 0b10100011u);
    EXPECT_EQ(c.to_string(), "10100011");
    EXPECT_EQ(CellCode::from_string(""), CellCode::root());
}

TEST(CellCode, RejectsMalformedText) {
    EXPECT_THROW(CellCode::from_string("101"), std::invalid_argument);
    EXPECT_THROW(CellCode::from_string("1021"), std::invalid_argument);
    EXPECT_THROW(CellCode::from_string(std::string(62, '0')), std::invalid_argument);
    EXPECT_THROW(CellCode(31, 0), std::invalid_argument);
    EXPECT_THROW(CellCode(2, 0b10000), std::invalid_argument);
}

TEST(CellCode, AncestryIsPrefix) {
    const auto a = CellCode::from_string("10");
    const auto b = CellCode::from_string("10100011");
    EXPECT_TRUE(is_ancestor(a, b));
    EXPECT_FALSE(is_ancestor(b, a));
    EXPECT_TRUE(is_ancestor(b, b));
    EXPECT_TRUE(is_ancestor(CellCode::root(), b));
    EXPECT_FALSE(is_ancestor(CellCode::from_string("11"), b));
    EXPECT_TRUE(overlaps(b, a));
    EXPECT_FALSE(overlaps(CellCode::from_string("1011"), b));
}

TEST(CellCode, AncestryMatchesStringPrefixOnRandomCodes) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5000; ++trial) {
        const int la = static_cast<int>(rng() % 9);
        const int lb = static_cast<int>(rng() % 9);
        std::string sa, sb;
        for (int i = 0; i < 2 * la; ++i) sa += (rng() & 1) ? '1' : '0';
        // bias b towards sharing a's prefix
        sb = (rng() % 2 && lb >= la) ? sa : "";
        while (static_cast<int>(sb.size()) < 2 * lb) sb += (rng() & 1) ? '1' : '0';
        sb.resize(2 * lb);
        const bool prefix = sb.compare(0, sa.size(), sa) == 0 && sa.size() <= sb.size();
        EXPECT_EQ(is_ancestor(CellCode::from_string(sa), CellCode::from_string(sb)), prefix) << sa << " " << sb;
    }
}

TEST(CellCode, ChildParentAndQuadrants) {
    const auto c = CellCode::from_string("1001");
    EXPECT_EQ(c.child(2).to_string(), "100110");
    EXPECT_EQ(c.child(2).parent(), c);
    EXPECT_EQ(c.quadrant_at(0), 2u);
    EXPECT_EQ(c.quadrant_at(1), 1u);
    EXPECT_EQ(c.ancestor_at(1).to_string(), "10");
    EXPECT_THROW(c.ancestor_at(3), std::out_of_range);
    const auto kids = c.children();
    for (unsigned q = 0; q < 4; ++q) EXPECT_EQ(kids[q], c.child(q));
    EXPECT_THROW(CellCode(30, 0).child(0), std::out_of_range);
}

TEST(CellCode, KeysAreUniqueAcrossLevels) {
    std::set<std::uint64_t> keys;
    std::size_t count = 0;
    for (int level = 0; level <= 4; ++level) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (2 * level)); ++bits) {
            const CellCode c(level, bits);
            keys.insert(c.key());
            EXPECT_EQ(CellCode::from_key(c.key()), c);
            ++count;
        }
    }
    EXPECT_EQ(keys.size(), count);
    EXPECT_THROW(CellCode::from_key(0), std::invalid_argument);
    EXPECT_THROW(CellCode::from_key(0b10), std::invalid_argument);
}

TEST(Morton, EncodeMatchesBitLoop) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20000; ++trial) {
        const int level = static_cast<int>(rng() % 31);
        const std::uint64_t side = std::uint64_t{1} << level;
        const auto col = static_cast<std::uint32_t>(rng() % side);
        const auto row = static_cast<std::uint32_t>(rng() % side);
        const CellCode c = encode(col, row, level);
        ASSERT_EQ(c.bits(), naive_interleave(col, row, level));
        const CellIndex back = decode(c);
        ASSERT_EQ(back, (CellIndex{col, row, level}));
    }
}

TEST(Morton, ColumnBitComesFirst) {
    EXPECT_EQ(encode(1, 0, 1).to_string(), "10");
    EXPECT_EQ(encode(0, 1, 1).to_string(), "01");
    EXPECT_EQ(encode(2, 1, 2).to_string(), "1001");
}

TEST(Morton, RejectsOutOfRange) {
    EXPECT_THROW(encode(4, 0, 2), std::out_of_range);
    EXPECT_THROW(encode(0, 0, 31), std::out_of_range);
    EXPECT_THROW(encode(0, 0, -1), std::out_of_range);
}

TEST(Morton, ZOrderIsMonotoneInsideQuadrants) {
    // all cells of one quadrant sort before all cells of the next one
    for (std::uint32_t col = 0; col < 8; ++col) {
        for (std::uint32_t row = 0; row < 8; ++row) {
            const auto c = encode(col, row, 3);
            EXPECT_EQ(c.quadrant_at(0), ((col >> 2) << 1) | (row >> 2));
        }
    }
}
