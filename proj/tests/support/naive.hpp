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

// Reference implementations used only by the tests. They share no code with
// the library: every predicate here is written from first principles and kept
// deliberately simple (quadratic loops, ray casting, sampling).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gptree/geometry.hpp"

namespace gptree::testing {

inline constexpr double kEps = 1e-12;

/// Bit-by-bit Z-order interleave, column bit first.
std::uint64_t naive_interleave(std::uint32_t col, std::uint32_t row, int level);

/// Closed segment intersection by parameter solving.
bool naive_segments_meet(const Segment& a, const Segment& b);

double naive_point_segment_distance(Coordinate p, const Segment& s);

/// -1 exterior, 0 boundary, 1 interior; even-odd ray casting over all rings.
int naive_locate(Coordinate p, const Geometry& polygon);

/// Point lies in the closed point set of g.
bool naive_covers_point(const Geometry& g, Coordinate p);

bool naive_intersects(const Geometry& a, const Geometry& b);

/// Every point of s lies in the closed point set of q.
bool naive_contains(const Geometry& q, const Geometry& s);

double naive_distance(const Geometry& a, const Geometry& b);

/// Rectangle versus geometry: sampled on a fine lattice plus the exact edge tests.
bool naive_touches_rect(const Geometry& g, const Envelope& r);
bool naive_covers_rect(const Geometry& g, const Envelope& r);

std::vector<ObjectId> naive_range(std::span<const SpatialObject> objects, const Geometry& q, bool contains);
std::vector<ObjectId> naive_within(std::span<const SpatialObject> objects, const Geometry& q, double eps);

struct NaiveNeighbor {
    ObjectId id;
    double distance;
};
std::vector<NaiveNeighbor> naive_knn(std::span<const SpatialObject> objects, const Geometry& q, std::size_t k);

std::string describe(const std::vector<ObjectId>& ids);

}  // namespace gptree::testing
