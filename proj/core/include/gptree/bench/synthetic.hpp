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
#include <vector>

#include "gptree/geometry.hpp"

namespace gptree::bench {

/// Relative weights of the generated kinds; they need not sum to 1.
struct KindMix {
    double point = 0.0;
    double line_string = 1.0;
    double polygon = 0.0;
};

struct SyntheticSpec {
    std::size_t count = 1000;
    KindMix mix;
    Envelope extent{-180.0, -90.0, 180.0, 90.0};
    std::uint64_t seed = 42;
    /// 0 places objects uniformly.
    std::size_t cluster_count = 8;
    /// Cluster standard deviation as a fraction of the extent width.
    double cluster_spread = 0.05;
    /// Mean segment count of line strings and polygon rings.
    double avg_segments = 19.0;
    /// Typical object diameter as a fraction of the extent width.
    double object_size = 0.005;
};

/// Deterministic for a fixed spec. Ids run 0..count-1. Line strings are random
/// walks and polygons star-shaped rings around a center, both with a segment
/// count drawn uniformly around avg_segments. Throws std::invalid_argument on
/// count == 0 or an empty mix.
std::vector<SpatialObject> generate_synthetic(const SyntheticSpec& spec);

enum class QueryShape { Polygon, Box, Point };

struct QuerySpec {
    std::size_t count = 100;
    QueryShape shape = QueryShape::Polygon;
    /// Query diameter as a fraction of the extent width (ignored for points).
    double size = 0.03;
    /// Vertex count of polygon queries.
    std::size_t vertices = 8;
    std::uint64_t seed = 7;
};

/// Queries centred on randomly chosen objects (jittered by one query size), or
/// uniformly when `anchors` is empty. All queries lie inside `extent`.
std::vector<Geometry> generate_queries(const QuerySpec& spec, const Envelope& extent,
                                       const std::vector<SpatialObject>& anchors);

}  // namespace gptree::bench
