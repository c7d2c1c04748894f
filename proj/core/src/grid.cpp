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

#include "gptree/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "gptree/error.hpp"

namespace gptree {

namespace {

std::uint32_t clamp_index(double v, std::uint32_t side) {
    if (!(v > 0.0)) return 0;
    if (v >= static_cast<double>(side)) return side - 1;
    return static_cast<std::uint32_t>(v);
}

class Decomposer {
  public:
    Decomposer(const Geometry& g, const DecompositionConfig& cfg, const GridExtent& extent,
               bool keep_segments)
        : g_(g), cfg_(cfg), extent_(extent), keep_segments_(keep_segments) {}

    Decomposition run() {
        out_.segments = segments(g_);
        min_level_ = min_boundary_level(g_.envelope(), cfg_, extent_);
        stack_.resize(out_.segments.size());
        for (std::uint32_t i = 0; i < stack_.size(); ++i) stack_[i] = i;
        descend(CellCode::root(), 0, 0, 0, stack_.size());
        return std::move(out_);
    }

  private:
    void emit(const CellCode& c, bool interior, std::size_t begin, std::size_t end) {
        out_.cells.push_back({c, interior});
        if (!keep_segments_) return;
        auto& segs = out_.cell_segments.emplace_back();
        if (!interior) segs.assign(stack_.begin() + static_cast<std::ptrdiff_t>(begin),
                                   stack_.begin() + static_cast<std::ptrdiff_t>(end));
    }

    // The cell's segment indices are stack_[begin, end); children push their
    // subsets on top and pop them when done.
    void descend(const CellCode& c, std::uint32_t col, std::uint32_t row, std::size_t begin,
                 std::size_t end) {
        const Envelope rect = bounds_of(c.level(), col, row);
        if (g_.is_polygon()) {
            bool crosses = false;
            for (std::size_t k = begin; k < end && !crosses; ++k) {
                crosses = segment_crosses_rect_interior(out_.segments[stack_[k]], rect);
            }
            if (!crosses) {
                if (locate_in_polygon(rect.center(), g_) != Location::Exterior) {
                    emit(c, true, begin, begin);
                    return;
                }
                if (begin == end) return;
            }
        } else if (begin == end) {
            return;
        }
        const bool fine_enough = c.level() >= min_level_ && end - begin <= cfg_.seg;
        if (fine_enough || c.level() >= cfg_.max_level) {
            emit(c, false, begin, end);
            return;
        }
        for (unsigned q = 0; q < 4; ++q) {
            const std::uint32_t ccol = 2 * col + (q >> 1);
            const std::uint32_t crow = 2 * row + (q & 1u);
            const Envelope child_rect = bounds_of(c.level() + 1, ccol, crow);
            const std::size_t top = stack_.size();
            for (std::size_t k = begin; k < end; ++k) {
                const std::uint32_t i = stack_[k];
                if (segment_intersects_rect(out_.segments[i], child_rect)) stack_.push_back(i);
            }
            descend(c.child(q), ccol, crow, top, stack_.size());
            stack_.resize(top);
        }
    }

    // Same arithmetic as cell_bounds, without decoding the code.
    Envelope bounds_of(int level, std::uint32_t col, std::uint32_t row) const {
        const double w = extent_.cell_width(level);
        const double h = extent_.cell_height(level);
        const auto& b = extent_.bounds;
        return {b.min_x + w * col, b.min_y + h * row, b.min_x + w * (col + 1.0), b.min_y + h * (row + 1.0)};
    }

    const Geometry& g_;
    const DecompositionConfig& cfg_;
    const GridExtent& extent_;
    bool keep_segments_;
    int min_level_ = 0;
    std::vector<std::uint32_t> stack_;
    Decomposition out_;
};

Decomposition run_decomposition(const Geometry& g, const DecompositionConfig& cfg,
                                const GridExtent& extent, bool keep_segments) {
    cfg.validate();
    if (!extent.bounds.contains(g.envelope())) {
        throw DataError("geometry lies outside the grid extent");
    }
    if (g.is_point()) {
        Decomposition d;
        d.cells.push_back({cell_containing(g.first_coordinate(), cfg.point_level, extent), false});
        if (keep_segments) d.cell_segments.emplace_back();
        return d;
    }
    return Decomposer(g, cfg, extent, keep_segments).run();
}

}  // namespace

GridExtent::GridExtent(const Envelope& b) : bounds(b) {
    if (!std::isfinite(b.min_x) || !std::isfinite(b.min_y) || !std::isfinite(b.max_x) ||
        !std::isfinite(b.max_y) || !(b.min_x < b.max_x) || !(b.min_y < b.max_y)) {
        throw std::invalid_argument("grid extent must be a finite, non-degenerate rectangle");
    }
}

namespace {

// 2^-level for every valid level; exact, so cell edges match an ldexp-based layout
constexpr auto kInversePowers = [] {
    std::array<double, CellCode::kMaxLevel + 1> t{};
    double v = 1.0;
    for (auto& x : t) {
        x = v;
        v /= 2.0;
    }
    return t;
}();

}  // namespace

double GridExtent::cell_width(int level) const { return bounds.width() * kInversePowers.at(level); }

double GridExtent::cell_height(int level) const { return bounds.height() * kInversePowers.at(level); }

void DecompositionConfig::validate() const {
    if (seg == 0) throw std::invalid_argument("seg must be positive");
    if (max_level < 1 || max_level > CellCode::kMaxLevel) {
        throw std::invalid_argument("max level must lie in [1, 30]");
    }
    if (point_level < 1 || point_level > max_level) {
        throw std::invalid_argument("point level must lie in [1, max level]");
    }
    if (envelope_depth < 0) throw std::invalid_argument("envelope depth must be non-negative");
}

Envelope cell_bounds(const CellCode& c, const GridExtent& extent) {
    const auto idx = decode(c);
    const double w = extent.cell_width(c.level());
    const double h = extent.cell_height(c.level());
    const auto& b = extent.bounds;
    // both edges from the index so that neighbouring cells share exact borders
    return {b.min_x + w * idx.col, b.min_y + h * idx.row, b.min_x + w * (idx.col + 1.0),
            b.min_y + h * (idx.row + 1.0)};
}

CellCode cell_containing(Coordinate p, int level, const GridExtent& extent) {
    const std::uint32_t side = std::uint32_t{1} << level;
    const auto& b = extent.bounds;
    std::uint32_t col = clamp_index((p.x - b.min_x) / extent.cell_width(level), side);
    std::uint32_t row = clamp_index((p.y - b.min_y) / extent.cell_height(level), side);
    // correct the division's rounding against the realised borders
    auto rect = cell_bounds(encode(col, row, level), extent);
    if (p.x < rect.min_x && col > 0) --col;
    else if (p.x >= rect.max_x && col + 1 < side) ++col;
    if (p.y < rect.min_y && row > 0) --row;
    else if (p.y >= rect.max_y && row + 1 < side) ++row;
    return encode(col, row, level);
}

std::vector<CellCode> neighbors(const CellCode& c) {
    const auto idx = decode(c);
    const std::int64_t side = std::int64_t{1} << c.level();
    std::vector<CellCode> out;
    out.reserve(8);
    for (int dc = -1; dc <= 1; ++dc) {
        for (int dr = -1; dr <= 1; ++dr) {
            if (dc == 0 && dr == 0) continue;
            const std::int64_t col = static_cast<std::int64_t>(idx.col) + dc;
            const std::int64_t row = static_cast<std::int64_t>(idx.row) + dr;
            if (col < 0 || row < 0 || col >= side || row >= side) continue;
            out.push_back(encode(static_cast<std::uint32_t>(col), static_cast<std::uint32_t>(row),
                                 c.level()));
        }
    }
    return out;
}

int min_boundary_level(const Envelope& env, const DecompositionConfig& cfg,
                       const GridExtent& extent) {
    int level = 0;
    while (level < cfg.max_level && extent.cell_width(level) > env.width() &&
           extent.cell_height(level) > env.height()) {
        ++level;
    }
    return std::min(level + cfg.envelope_depth, cfg.max_level);
}

std::vector<GridCell> decompose(const Geometry& g, const DecompositionConfig& cfg,
                                const GridExtent& extent) {
    return run_decomposition(g, cfg, extent, false).cells;
}

Decomposition decompose_with_segments(const Geometry& g, const DecompositionConfig& cfg,
                                      const GridExtent& extent) {
    return run_decomposition(g, cfg, extent, true);
}

std::vector<GridCell> extend_cells(std::span<const GridCell> cells, double eps,
                                   const GridExtent& extent) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    std::unordered_set<std::uint64_t> sources;
    for (const auto& c : cells) sources.insert(c.cell.key());
    std::unordered_set<std::uint64_t> seen;
    std::vector<GridCell> out;
    const auto& b = extent.bounds;
    for (const auto& src : cells) {
        const int level = src.cell.level();
        const std::uint32_t side = std::uint32_t{1} << level;
        const double w = extent.cell_width(level);
        const double h = extent.cell_height(level);
        const Envelope rect = cell_bounds(src.cell, extent);
        const std::uint32_t c0 = clamp_index(std::floor((rect.min_x - eps - b.min_x) / w), side);
        const std::uint32_t c1 = clamp_index(std::floor((rect.max_x + eps - b.min_x) / w), side);
        const std::uint32_t r0 = clamp_index(std::floor((rect.min_y - eps - b.min_y) / h), side);
        const std::uint32_t r1 = clamp_index(std::floor((rect.max_y + eps - b.min_y) / h), side);
        for (std::uint32_t col = c0; col <= c1; ++col) {
            for (std::uint32_t row = r0; row <= r1; ++row) {
                const CellCode code = encode(col, row, level);
                const auto key = code.key();
                if (sources.contains(key) || seen.contains(key)) continue;
                if (cell_bounds(code, extent).distance_to(rect) > eps) continue;
                seen.insert(key);
                out.push_back({code, false});
            }
        }
    }
    return out;
}

std::vector<GridCell> convert_cells(std::span<const GridCell> cells, double eps,
                                    const GridExtent& extent) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    std::vector<GridCell> out(cells.begin(), cells.end());
    for (auto& c : out) {
        if (!c.interior && cell_bounds(c.cell, extent).diagonal() < eps) c.interior = true;
    }
    return out;
}

std::vector<GridCell> merge_cells(std::vector<GridCell> cells) {
    // key -> interior flag
    std::unordered_map<std::uint64_t, bool> tags;
    int deepest = 0;
    for (const auto& c : cells) {
        auto [it, inserted] = tags.emplace(c.cell.key(), c.interior);
        if (!inserted) it->second = it->second || c.interior;
        deepest = std::max(deepest, c.cell.level());
    }
    for (int level = deepest; level >= 1; --level) {
        std::unordered_map<std::uint64_t, std::pair<int, int>> quartets;  // parent -> (interior, boundary)
        for (const auto& [key, interior] : tags) {
            const CellCode code = CellCode::from_key(key);
            if (code.level() != level) continue;
            auto& counts = quartets[code.parent().key()];
            (interior ? counts.first : counts.second)++;
        }
        for (const auto& [parent_key, counts] : quartets) {
            if (counts.first != 4 && counts.second != 4) continue;
            const bool interior = counts.first == 4;
            for (const auto& child : CellCode::from_key(parent_key).children()) tags.erase(child.key());
            auto [it, inserted] = tags.emplace(parent_key, interior);
            if (!inserted) it->second = it->second || interior;
        }
    }
    std::vector<GridCell> out;
    out.reserve(tags.size());
    for (const auto& [key, interior] : tags) out.push_back({CellCode::from_key(key), interior});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Segment> clip_to_cells(const Geometry& g, std::span<const GridCell> cells,
                                   const GridExtent& extent) {
    std::vector<Envelope> rects;
    rects.reserve(cells.size());
    for (const auto& c : cells) rects.push_back(cell_bounds(c.cell, extent));
    return clip_to_rects(g, rects);
}

}  // namespace gptree
