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
#include <span>
#include <vector>

#include "gptree/cell_code.hpp"
#include "gptree/geometry.hpp"

namespace gptree {

/// One cell of an object's approximation. Interior cells are covered by the
/// object's region; boundary cells merely touch it.
struct GridCell {
    CellCode cell;
    bool interior = false;

    friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

/// The rectangle realised by the level-0 cell.
struct GridExtent {
    Envelope bounds{-180.0, -90.0, 180.0, 90.0};

    GridExtent() = default;
    /// Throws std::invalid_argument on a degenerate or non-finite rectangle.
    explicit GridExtent(const Envelope& b);

    static GridExtent world() { return GridExtent(); }

    double cell_width(int level) const;
    double cell_height(int level) const;

    friend bool operator==(const GridExtent&, const GridExtent&) = default;
};

struct DecompositionConfig {
    /// A boundary cell touching more segments than this is subdivided.
    std::uint32_t seg = 20;
    int max_level = 16;
    int point_level = 16;
    /// Boundary cells are at least this many levels below the shallowest cell
    /// that fits the object's envelope.
    int envelope_depth = 1;

    /// Throws std::invalid_argument unless 1 <= point_level <= max_level <= 30,
    /// seg > 0 and envelope_depth >= 0.
    void validate() const;

    friend bool operator==(const DecompositionConfig&, const DecompositionConfig&) = default;
};

Envelope cell_bounds(const CellCode& c, const GridExtent& extent);

/// The level-`level` cell holding `p`, cells taken half-open on their upper
/// sides except along the extent's upper border.
CellCode cell_containing(Coordinate p, int level, const GridExtent& extent);

/// Same-level edge and corner neighbours that lie inside the grid.
std::vector<CellCode> neighbors(const CellCode& c);

/// Shallowest level at which a cell is no wider or no taller than the envelope,
/// plus `envelope_depth`, capped at `max_level`. Boundary cells above it are
/// split regardless of their segment count.
int min_boundary_level(const Envelope& env, const DecompositionConfig& cfg,
                       const GridExtent& extent);

/// Cells of a decomposition together with, for boundary cells, the indices of
/// the segments touching them.
struct Decomposition {
    std::vector<Segment> segments;
    std::vector<GridCell> cells;
    std::vector<std::vector<std::uint32_t>> cell_segments;
};

/// Adaptive quadtree approximation of `g`. A point becomes one boundary cell at
/// `point_level`. Other geometries are descended from the root: a cell covered by
/// the region is emitted as interior, a disjoint cell is dropped, and a touching
/// cell is emitted as boundary once it is at or below min_boundary_level and
/// touches at most `seg` segments, or at `max_level`; otherwise it is split.
/// Throws DataError if `g` is not inside the extent.
std::vector<GridCell> decompose(const Geometry& g, const DecompositionConfig& cfg,
                                const GridExtent& extent);

Decomposition decompose_with_segments(const Geometry& g, const DecompositionConfig& cfg,
                                      const GridExtent& extent);

/// Same-level boundary cells within Euclidean distance `eps` of the source
/// cells, excluding the sources. Throws std::invalid_argument if eps <= 0.
std::vector<GridCell> extend_cells(std::span<const GridCell> cells, double eps,
                                   const GridExtent& extent);

/// Boundary cells whose diagonal is strictly below `eps` become interior.
std::vector<GridCell> convert_cells(std::span<const GridCell> cells, double eps,
                                    const GridExtent& extent);

/// Replaces every complete quartet of same-tag siblings by their parent, to a
/// fixpoint. Duplicate codes collapse, interior winning over boundary.
std::vector<GridCell> merge_cells(std::vector<GridCell> cells);

std::vector<Segment> clip_to_cells(const Geometry& g, std::span<const GridCell> cells,
                                   const GridExtent& extent);

}  // namespace gptree
