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
#include <cmath>
#include <random>
#include <set>

#include "datasets.hpp"
#include "gptree/error.hpp"
#include "gptree/grid.hpp"
#include "naive.hpp"

using namespace gptree;
namespace t = gptree::testing;

namespace {

double rect_gap(const Envelope& a, const Envelope& b) {
    const double dx = std::max({0.0, a.min_x - b.max_x, b.min_x - a.max_x});
    const double dy = std::max({0.0, a.min_y - b.max_y, b.min_y - a.max_y});
    return std::sqrt(dx * dx + dy * dy);
}

int naive_min_level(const Envelope& env, const DecompositionConfig& cfg, const GridExtent& ext) {
    for (int level = 0; level <= cfg.max_level; ++level) {
        const double w = ext.bounds.width() / std::pow(2.0, level);
        const double h = ext.bounds.height() / std::pow(2.0, level);
        if (w <= env.width() || h <= env.height() || level == cfg.max_level) {
            return std::min(level + cfg.envelope_depth, cfg.max_level);
        }
    }
    return cfg.max_level;
}

std::size_t naive_segments_touching(const Geometry& g, const Envelope& r) {
    std::size_t n = 0;
    for (const auto& ring : g.parts()) {
        for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
            n += t::naive_touches_rect(Geometry::line_string({ring[i], ring[i + 1]}), r);
        }
    }
    return n;
}

std::vector<Coordinate> samples_on(const Geometry& g, std::mt19937_64& rng) {
    std::vector<Coordinate> out;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& ring : g.parts()) {
        for (std::size_t i = 0; i < ring.size(); ++i) {
            out.push_back(ring[i]);
            if (i + 1 < ring.size()) {
                const double s = u(rng);
                out.push_back({ring[i].x + s * (ring[i + 1].x - ring[i].x), ring[i].y + s * (ring[i + 1].y - ring[i].y)});
            }
        }
    }
    if (g.is_polygon()) {
        const auto& e = g.envelope();
        for (int i = 0; i < 40; ++i) {
            const Coordinate p{e.min_x + u(rng) * e.width(), e.min_y + u(rng) * e.height()};
            if (t::naive_locate(p, g) >= 0) out.push_back(p);
        }
    }
    return out;
}

}  // namespace

TEST(GridExtent, RejectsDegenerate) {
    EXPECT_THROW(GridExtent(Envelope(0, 0, 0, 1)), std::invalid_argument);
    EXPECT_THROW(GridExtent(Envelope(0, 0, INFINITY, 1)), std::invalid_argument);
    EXPECT_NO_THROW(GridExtent(Envelope(0, 0, 1, 1)));
}

TEST(DecompositionConfig, Validates) {
    DecompositionConfig c;
    EXPECT_NO_THROW(c.validate());
    c.seg = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.point_level = c.max_level + 1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.max_level = 31;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.envelope_depth = -1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(CellGeometry, AncestorBoundsContainDescendant) {
    const GridExtent ext;
    const auto a = cell_bounds(CellCode::from_string("10"), ext);
    const auto b = cell_bounds(CellCode::from_string("10100011"), ext);
    EXPECT_TRUE(a.contains(b));
    EXPECT_EQ(a, Envelope(0, -90, 180, 0));
}

TEST(CellGeometry, ChildrenTileParentExactly) {
    const GridExtent ext(Envelope(-3.7, 1.1, 12.9, 8.3));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 500; ++i) {
        const int level = static_cast<int>(rng() % 20);
        const std::uint32_t side = 1u << level;
        const auto c = encode(static_cast<std::uint32_t>(rng() % side), static_cast<std::uint32_t>(rng() % side), level);
        const auto p = cell_bounds(c, ext);
        Envelope u;
        double area = 0.0;
        for (const auto& k : c.children()) {
            const auto r = cell_bounds(k, ext);
            u.expand(r);
            area += r.area();
        }
        EXPECT_EQ(u, p);
        EXPECT_NEAR(area, p.area(), 1e-9 * p.area());
        // siblings share exact borders
        EXPECT_EQ(cell_bounds(c.child(0), ext).max_x, cell_bounds(c.child(2), ext).min_x);
        EXPECT_EQ(cell_bounds(c.child(0), ext).max_y, cell_bounds(c.child(1), ext).min_y);
    }
}

TEST(CellGeometry, CellContainingPoint) {
    const GridExtent ext;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> x(-180, 180), y(-90, 90);
    for (int i = 0; i < 5000; ++i) {
        const Coordinate p{x(rng), y(rng)};
        const int level = 1 + static_cast<int>(rng() % 25);
        const auto c = cell_containing(p, level, ext);
        ASSERT_EQ(c.level(), level);
        ASSERT_TRUE(cell_bounds(c, ext).contains(p));
    }
    EXPECT_EQ(decode(cell_containing({180, 90}, 3, ext)), (CellIndex{7, 7, 3}));
    EXPECT_EQ(decode(cell_containing({0, 0}, 1, ext)), (CellIndex{1, 1, 1}));
}

TEST(CellGeometry, Neighbours) {
    EXPECT_EQ(neighbors(encode(0, 0, 2)).size(), 3u);
    EXPECT_EQ(neighbors(encode(1, 0, 2)).size(), 5u);
    EXPECT_EQ(neighbors(encode(1, 2, 2)).size(), 8u);
    EXPECT_TRUE(neighbors(CellCode::root()).empty());
}

TEST(MinBoundaryLevel, MatchesLevelScan) {
    const GridExtent ext;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> size(1e-6, 300.0);
    for (int depth = 0; depth < 4; ++depth) {
        DecompositionConfig cfg;
        cfg.envelope_depth = depth;
        for (int i = 0; i < 2000; ++i) {
            const Envelope env(0, 0, size(rng), size(rng) / 2);
            ASSERT_EQ(min_boundary_level(env, cfg, ext), naive_min_level(env, cfg, ext));
        }
    }
}

TEST(Decompose, PointIsOneCellAtPointLevel) {
    DecompositionConfig cfg;
    const GridExtent ext;
    const auto cells = decompose(Geometry::point({12.5, -7.25}), cfg, ext);
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_FALSE(cells[0].interior);
    EXPECT_EQ(cells[0].cell.level(), cfg.point_level);
    EXPECT_TRUE(cell_bounds(cells[0].cell, ext).contains(Coordinate{12.5, -7.25}));
}

TEST(Decompose, OutsideExtentIsDataError) {
    EXPECT_THROW(decompose(Geometry::point({200, 0}), DecompositionConfig{}, GridExtent{}), DataError);
}

TEST(Decompose, SquareOnCellBordersIsOneInteriorCell) {
    // exactly one level-3 cell: [0,45] x [0,22.5]; its eight neighbours only
    // share its border and stay as boundary cells
    DecompositionConfig cfg;
    cfg.envelope_depth = 0;
    const auto cells = decompose(t::box(0, 0, 45, 22.5), cfg, GridExtent{});
    ASSERT_EQ(cells.size(), 9u);
    int interior = 0;
    for (const auto& c : cells) {
        EXPECT_EQ(c.cell.level(), 3);
        if (c.interior) {
            ++interior;
            EXPECT_EQ(c.cell, encode(4, 4, 3));
        } else {
            const auto n = neighbors(encode(4, 4, 3));
            EXPECT_NE(std::find(n.begin(), n.end(), c.cell), n.end());
        }
    }
    EXPECT_EQ(interior, 1);
}

// Checks every emitted cell against the sampled/naive classifier and the stop rule.
TEST(Decompose, CellsAgreeWithNaiveClassifier) {
    const GridExtent ext(Envelope(0, 0, 64, 64));
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> pos(8, 56);
    for (int trial = 0; trial < 150; ++trial) {
        DecompositionConfig cfg;
        cfg.seg = 1 + static_cast<std::uint32_t>(rng() % 6);
        cfg.max_level = 9;
        cfg.point_level = 9;
        cfg.envelope_depth = static_cast<int>(rng() % 3);
        const auto g = t::random_shape(rng, {pos(rng), pos(rng)}, 1.0 + static_cast<double>(rng() % 6));
        if (g.is_point()) continue;
        const auto cells = decompose(g, cfg, ext);
        ASSERT_FALSE(cells.empty());
        const int min_level = naive_min_level(g.envelope(), cfg, ext);

        for (std::size_t i = 0; i < cells.size(); ++i) {
            for (std::size_t j = i + 1; j < cells.size(); ++j) {
                ASSERT_FALSE(overlaps(cells[i].cell, cells[j].cell)) << "overlapping cells";
            }
            const auto r = cell_bounds(cells[i].cell, ext);
            if (cells[i].interior) {
                ASSERT_TRUE(t::naive_covers_rect(g, r)) << cells[i].cell.to_string();
                continue;
            }
            ASSERT_TRUE(t::naive_touches_rect(g, r));
            ASSERT_FALSE(t::naive_covers_rect(g, r));
            const int level = cells[i].cell.level();
            const std::size_t segs = naive_segments_touching(g, r);
            if (level < cfg.max_level) {
                ASSERT_GE(level, min_level);
                ASSERT_LE(segs, cfg.seg);
            }
            // the parent was not fine enough to stop
            if (level > 0) {
                const auto pr = cell_bounds(cells[i].cell.parent(), ext);
                ASSERT_TRUE(level - 1 < min_level || naive_segments_touching(g, pr) > cfg.seg);
            }
        }
        for (Coordinate p : samples_on(g, rng)) {
            const bool covered = std::any_of(cells.begin(), cells.end(),
                                             [&](const GridCell& c) { return cell_bounds(c.cell, ext).contains(p); });
            ASSERT_TRUE(covered) << "uncovered point " << p.x << " " << p.y;
        }
    }
}

TEST(Decompose, SegmentListsMatchCells) {
    const GridExtent ext;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = t::random_star(rng, {10, 10}, 3.0, 12, trial % 2 == 0);
        const auto d = decompose_with_segments(g, DecompositionConfig{}, ext);
        ASSERT_EQ(d.cells.size(), d.cell_segments.size());
        ASSERT_EQ(d.segments.size(), g.segment_count());
        for (std::size_t i = 0; i < d.cells.size(); ++i) {
            const auto r = cell_bounds(d.cells[i].cell, ext);
            std::set<std::uint32_t> expected;
            if (!d.cells[i].interior) {
                for (std::uint32_t s = 0; s < d.segments.size(); ++s) {
                    if (t::naive_touches_rect(Geometry::line_string({d.segments[s].start, d.segments[s].end}), r)) {
                        expected.insert(s);
                    }
                }
            }
            const std::set<std::uint32_t> got(d.cell_segments[i].begin(), d.cell_segments[i].end());
            ASSERT_EQ(got, expected);
        }
    }
}

TEST(Decompose, SegKnobCoarsensCells) {
    const GridExtent ext;
    std::mt19937_64 rng(6);
    const auto g = t::random_walk(rng, {0, 0}, 0.3, 60);
    std::size_t previous = SIZE_MAX;
    for (std::uint32_t seg : {1u, 2u, 4u, 8u, 16u, 32u, 64u}) {
        DecompositionConfig cfg;
        cfg.seg = seg;
        const auto n = decompose(g, cfg, ext).size();
        EXPECT_LE(n, previous) << "seg " << seg;
        previous = n;
    }
}

TEST(ExtendCells, MatchesExhaustiveScan) {
    const GridExtent ext(Envelope(0, 0, 64, 32));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> eps_dist(0.1, 12.0);
    for (int trial = 0; trial < 60; ++trial) {
        const int level = 1 + static_cast<int>(rng() % 5);
        const std::uint32_t side = 1u << level;
        std::vector<GridCell> sources;
        std::set<std::uint64_t> source_keys;
        for (int i = 0; i < 1 + static_cast<int>(rng() % 4); ++i) {
            const auto c = encode(static_cast<std::uint32_t>(rng() % side), static_cast<std::uint32_t>(rng() % side), level);
            if (source_keys.insert(c.key()).second) sources.push_back({c, rng() % 2 == 0});
        }
        const double eps = eps_dist(rng);
        std::set<std::uint64_t> expected;
        for (std::uint32_t col = 0; col < side; ++col) {
            for (std::uint32_t row = 0; row < side; ++row) {
                const auto c = encode(col, row, level);
                if (source_keys.contains(c.key())) continue;
                for (const auto& s : sources) {
                    if (rect_gap(cell_bounds(c, ext), cell_bounds(s.cell, ext)) <= eps) expected.insert(c.key());
                }
            }
        }
        const auto got = extend_cells(sources, eps, ext);
        std::set<std::uint64_t> got_keys;
        for (const auto& c : got) {
            EXPECT_FALSE(c.interior);
            got_keys.insert(c.cell.key());
        }
        EXPECT_EQ(got.size(), got_keys.size()) << "duplicates";
        ASSERT_EQ(got_keys, expected) << "trial " << trial;
    }
    EXPECT_THROW(extend_cells({}, 0.0, ext), std::invalid_argument);
}

TEST(ConvertCells, SmallBoundaryCellsBecomeInterior) {
    const GridExtent ext;  // level-10 cells are 0.35 x 0.18, diagonal ~0.39
    const std::vector<GridCell> cells{{encode(3, 3, 10), false}, {encode(3, 3, 4), false}, {encode(1, 1, 4), true}};
    const auto out = convert_cells(cells, 0.5, ext);
    ASSERT_EQ(out.size(), 3u);
    EXPECT_TRUE(out[0].interior);
    EXPECT_FALSE(out[1].interior);
    EXPECT_TRUE(out[2].interior);
    EXPECT_FALSE(convert_cells(cells, 0.3, ext)[0].interior);
}

TEST(MergeCells, FourSiblingsBecomeParent) {
    const auto p = CellCode::from_string("0110");
    std::vector<GridCell> cells;
    for (const auto& c : p.children()) cells.push_back({c, true});
    const auto merged = merge_cells(cells);
    ASSERT_EQ(merged.size(), 1u);
    EXPECT_EQ(merged[0].cell, p);
    EXPECT_TRUE(merged[0].interior);
}

TEST(MergeCells, MixedOrIncompleteQuartetsStay) {
    const auto p = CellCode::from_string("0110");
    std::vector<GridCell> mixed{{p.child(0), true}, {p.child(1), true}, {p.child(2), true}, {p.child(3), false}};
    EXPECT_EQ(merge_cells(mixed).size(), 4u);
    mixed.pop_back();
    EXPECT_EQ(merge_cells(mixed).size(), 3u);
}

TEST(MergeCells, CascadesToFixpointAndDeduplicates) {
    const auto g = CellCode::from_string("11");
    std::vector<GridCell> cells;
    for (const auto& c : g.children()) {
        for (const auto& k : c.children()) cells.push_back({k, false});
    }
    cells.push_back({g.child(0).child(0), true});  // duplicate code, interior wins
    const auto merged = merge_cells(cells);
    // the interior duplicate breaks the first quartet, so only three parents form
    ASSERT_EQ(merged.size(), 3u + 4u);
    std::vector<GridCell> clean;
    for (const auto& c : g.children()) {
        for (const auto& k : c.children()) clean.push_back({k, false});
    }
    const auto top = merge_cells(clean);
    ASSERT_EQ(top.size(), 1u);
    EXPECT_EQ(top[0].cell, g);
}
