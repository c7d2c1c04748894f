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

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace gptree {

/// A quadtree cell: `level` quadrant choices packed as 2·level bits, most
/// significant pair first. Within each pair the column bit precedes the row bit,
/// so child index = (column bit << 1) | row bit and rows grow with y.
class CellCode {
  public:
    static constexpr int kMaxLevel = 30;

    constexpr CellCode() = default;

    /// Throws std::invalid_argument if level is outside [0, 30] or `bits` has
    /// more than 2·level significant bits.
    CellCode(int level, std::uint64_t bits);

    /// Parses the binary text form, e.g. "10100011". The empty string is the root.
    static CellCode from_string(std::string_view text);

    static constexpr CellCode root() { return CellCode(); }

    constexpr int level() const { return level_; }
    constexpr std::uint64_t bits() const { return bits_; }

    /// Unique 64-bit key: a sentinel bit above the code keeps levels apart.
    constexpr std::uint64_t key() const { return (std::uint64_t{1} << (2 * level_)) | bits_; }
    static CellCode from_key(std::uint64_t key);

    /// Quadrant chosen when stepping from `depth` to depth + 1 (0 <= depth < level).
    constexpr unsigned quadrant_at(int depth) const {
        return static_cast<unsigned>((bits_ >> (2 * (level_ - 1 - depth))) & 3u);
    }

    CellCode child(unsigned quadrant) const;
    std::array<CellCode, 4> children() const;
    CellCode parent() const;
    /// The ancestor (or self) at `level` <= this->level().
    CellCode ancestor_at(int level) const;

    std::string to_string() const;

    friend constexpr auto operator<=>(const CellCode&, const CellCode&) = default;

  private:
    std::uint8_t level_ = 0;
    std::uint64_t bits_ = 0;
};

/// True iff `a` is `b` or one of its ancestors: a shift and a compare.
constexpr bool is_ancestor(const CellCode& a, const CellCode& b) {
    return a.level() <= b.level() && (b.bits() >> (2 * (b.level() - a.level()))) == a.bits();
}

/// Cells overlap (share interior) iff one is an ancestor of the other.
constexpr bool overlaps(const CellCode& a, const CellCode& b) {
    return is_ancestor(a, b) || is_ancestor(b, a);
}

struct CellIndex {
    std::uint32_t col = 0;
    std::uint32_t row = 0;
    int level = 0;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Throws std::out_of_range when col or row is not below 2^level.
CellCode encode(std::uint32_t col, std::uint32_t row, int level);
CellIndex decode(const CellCode& code);

}  // namespace gptree
