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
#include <variant>
#include <vector>

#include "gptree/geometry.hpp"
#include "gptree/queries.hpp"

namespace gptree {

struct RangeMode {
    Predicate predicate = Predicate::Intersects;
};
struct DistanceMode {
    double eps = 0.03;
};
struct KnnMode {
    std::size_t k = 20;
};
using QueryMode = std::variant<RangeMode, DistanceMode, KnnMode>;

/// Range and distance answers hold ascending ids; kNN answers hold ids ordered
/// by (distance, id) with the matching distances.
struct QueryAnswer {
    std::vector<ObjectId> ids;
    std::vector<double> distances;

    friend bool operator==(const QueryAnswer&, const QueryAnswer&) = default;
};

/// Exhaustive scan; the reference answer for every engine.
QueryAnswer oracle_query(std::span<const SpatialObject> objects, const Geometry& q, const QueryMode& mode);

/// Sort-tile-recursive packed R-tree over object envelopes.
class StrTree {
  public:
    static constexpr std::size_t kDefaultCapacity = 10;

    /// Throws std::invalid_argument if capacity < 2.
    static StrTree build(std::span<const SpatialObject> objects, std::size_t capacity = kDefaultCapacity);

    /// n_c counts leaf entries whose envelope passes the filter; all of them are refined.
    QueryAnswer query(const Geometry& q, const QueryMode& mode, QueryStats* stats = nullptr) const;

    struct Node {
        Envelope envelope;
        std::uint32_t first = 0;  // first child in the level below, or first entry for leaves
        std::uint32_t count = 0;
    };
    struct Entry {
        Envelope envelope;
        ObjectId id = 0;
        std::uint32_t object = 0;  // index into the geometry table
    };

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    /// Levels from the leaves (0) upwards; the last level holds only the root.
    const std::vector<std::vector<Node>>& levels() const { return levels_; }
    std::span<const Entry> entries() const { return entries_; }
    std::size_t height() const { return levels_.size(); }
    std::size_t node_count() const;
    Envelope bounds() const;

    /// 40 B per leaf or child entry (envelope + reference), 8 B per node header,
    /// and an object table of 8 B key + 16 B per coordinate.
    std::uint64_t memory_bytes() const;

  private:
    std::vector<ObjectId> range(const Geometry& q, Predicate theta, QueryStats* stats) const;
    std::vector<ObjectId> within(const Geometry& q, double eps, QueryStats* stats) const;
    QueryAnswer knn(const Geometry& q, std::size_t k, QueryStats* stats) const;

    template <typename Fn>
    void visit(const Envelope& window, Fn&& fn) const;

    std::size_t capacity_ = kDefaultCapacity;
    std::vector<std::vector<Node>> levels_;
    std::vector<Entry> entries_;
    std::vector<Geometry> geometries_;
};

}  // namespace gptree
