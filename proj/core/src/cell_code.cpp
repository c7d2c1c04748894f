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

#include "gptree/cell_code.hpp"

#include <bit>
#include <stdexcept>

namespace gptree {

namespace {

// Spreads the low 32 bits so bit i lands on bit 2i.
std::uint64_t spread(std::uint32_t v) {
    std::uint64_t x = v;
    x = (x | (x << 16)) & 0x0000FFFF0000FFFFull;
    x = (x | (x << 8)) & 0x00FF00FF00FF00FFull;
    x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0Full;
    x = (x | (x << 2)) & 0x3333333333333333ull;
    x = (x | (x << 1)) & 0x5555555555555555ull;
    return x;
}

std::uint32_t compact(std::uint64_t x) {
    x &= 0x5555555555555555ull;
    x = (x | (x >> 1)) & 0x3333333333333333ull;
    x = (x | (x >> 2)) & 0x0F0F0F0F0F0F0F0Full;
    x = (x | (x >> 4)) & 0x00FF00FF00FF00FFull;
    x = (x | (x >> 8)) & 0x0000FFFF0000FFFFull;
    x = (x | (x >> 16)) & 0x00000000FFFFFFFFull;
    return static_cast<std::uint32_t>(x);
}

}  // namespace

CellCode::CellCode(int level, std::uint64_t bits) {
    if (level < 0 || level > kMaxLevel) throw std::invalid_argument("cell level out of range");
    if (level < 32 && (bits >> (2 * level)) != 0) {
        throw std::invalid_argument("cell code longer than 2 * level bits");
    }
    level_ = static_cast<std::uint8_t>(level);
    bits_ = bits;
}

CellCode CellCode::from_string(std::string_view text) {
    if (text.size() % 2 != 0) throw std::invalid_argument("cell code length must be even");
    if (text.size() > 2 * kMaxLevel) throw std::invalid_argument("cell code longer than 60 bits");
    std::uint64_t bits = 0;
    for (char c : text) {
        if (c != '0' && c != '1') throw std::invalid_argument("cell code must be binary");
        bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return CellCode(static_cast<int>(text.size() / 2), bits);
}

CellCode CellCode::from_key(std::uint64_t key) {
    if (key == 0) throw std::invalid_argument("invalid cell key");
    const int top = 63 - std::countl_zero(key);
    if (top % 2 != 0) throw std::invalid_argument("invalid cell key");
    return CellCode(top / 2, key & ((std::uint64_t{1} << top) - 1));
}

CellCode CellCode::child(unsigned quadrant) const {
    if (level_ >= kMaxLevel) throw std::out_of_range("cell at maximum level has no children");
    return CellCode(level_ + 1, (bits_ << 2) | (quadrant & 3u));
}

std::array<CellCode, 4> CellCode::children() const {
    return {child(0), child(1), child(2), child(3)};
}

CellCode CellCode::parent() const {
    if (level_ == 0) throw std::out_of_range("root cell has no parent");
    return CellCode(level_ - 1, bits_ >> 2);
}

CellCode CellCode::ancestor_at(int level) const {
    if (level < 0 || level > level_) throw std::out_of_range("ancestor level out of range");
    return CellCode(level, bits_ >> (2 * (level_ - level)));
}

std::string CellCode::to_string() const {
    std::string out(2 * level_, '0');
    for (int i = 0; i < 2 * level_; ++i) {
        if ((bits_ >> (2 * level_ - 1 - i)) & 1u) out[i] = '1';
    }
    return out;
}

CellCode encode(std::uint32_t col, std::uint32_t row, int level) {
    if (level < 0 || level > CellCode::kMaxLevel) throw std::out_of_range("cell level out of range");
    const std::uint64_t side = std::uint64_t{1} << level;
    if (col >= side || row >= side) throw std::out_of_range("cell index out of range for level");
    return CellCode(level, (spread(col) << 1) | spread(row));
}

CellIndex decode(const CellCode& code) {
    return {compact(code.bits() >> 1), compact(code.bits()), code.level()};
}

}  // namespace gptree
