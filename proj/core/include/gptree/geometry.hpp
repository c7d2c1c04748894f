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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <limits>
#include <span>
#include <vector>

namespace gptree {

/// Absolute tolerance, in dataset units, used by every orientation and
/// incidence test. Touching within this distance counts as intersecting.
inline constexpr double kTolerance = 1e-12;

using ObjectId = std::uint64_t;

struct Coordinate {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

inline double squared_distance(Coordinate a, Coordinate b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(Coordinate a, Coordinate b) { return std::sqrt(squared_distance(a, b)); }

/// Closed axis-aligned rectangle. A default-constructed envelope is empty.
struct Envelope {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    Envelope() = default;
    Envelope(double minx, double miny, double maxx, double maxy)
        : min_x(minx), min_y(miny), max_x(maxx), max_y(maxy) {}

    bool empty() const { return min_x > max_x || min_y > max_y; }
    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    double area() const { return width() * height(); }
    double diagonal() const { return std::hypot(width(), height()); }
    Coordinate center() const { return {(min_x + max_x) / 2.0, (min_y + max_y) / 2.0}; }

    void expand(Coordinate c) {
        min_x = std::min(min_x, c.x);
        min_y = std::min(min_y, c.y);
        max_x = std::max(max_x, c.x);
        max_y = std::max(max_y, c.y);
    }

    void expand(const Envelope& e) {
        min_x = std::min(min_x, e.min_x);
        min_y = std::min(min_y, e.min_y);
        max_x = std::max(max_x, e.max_x);
        max_y = std::max(max_y, e.max_y);
    }

    Envelope buffered(double d) const { return {min_x - d, min_y - d, max_x + d, max_y + d}; }

    bool intersects(const Envelope& o) const {
        return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
    }

    bool contains(const Envelope& o) const {
        return min_x <= o.min_x && o.max_x <= max_x && min_y <= o.min_y && o.max_y <= max_y;
    }

    bool contains(Coordinate c) const {
        return min_x <= c.x && c.x <= max_x && min_y <= c.y && c.y <= max_y;
    }

    /// Euclidean distance from a point to the closed rectangle (0 inside).
    double distance_to(Coordinate c) const {
        const double dx = std::max({min_x - c.x, 0.0, c.x - max_x});
        const double dy = std::max({min_y - c.y, 0.0, c.y - max_y});
        return std::hypot(dx, dy);
    }

    /// Euclidean distance between two closed rectangles (0 when they touch).
    double distance_to(const Envelope& o) const {
        const double dx = std::max({o.min_x - max_x, 0.0, min_x - o.max_x});
        const double dy = std::max({o.min_y - max_y, 0.0, min_y - o.max_y});
        return std::hypot(dx, dy);
    }

    friend bool operator==(const Envelope&, const Envelope&) = default;
};

struct Segment {
    Coordinate start;
    Coordinate end;

    Envelope envelope() const {
        return {std::min(start.x, end.x), std::min(start.y, end.y), std::max(start.x, end.x),
                std::max(start.y, end.y)};
    }

    friend bool operator==(const Segment&, const Segment&) = default;
};

enum class GeometryKind : std::uint8_t { Point = 0, LineString = 1, Polygon = 2 };

const char* to_string(GeometryKind kind);

/// Immutable 2-D geometry. Points hold one part with one coordinate, line strings
/// one part, polygons the exterior ring followed by zero or more holes. Every
/// factory validates its invariants and throws GeometryError on violation.
class Geometry {
  public:
    using Ring = std::vector<Coordinate>;

    Geometry() : Geometry(point({0.0, 0.0})) {}

    static Geometry point(Coordinate c);
    /// Consecutive duplicate coordinates are collapsed; at least two distinct
    /// coordinates must remain.
    static Geometry line_string(std::vector<Coordinate> coords);
    /// Each ring must be closed, hold at least four coordinates after collapsing
    /// consecutive duplicates, and must not self-intersect.
    static Geometry polygon(std::vector<Ring> rings);

    GeometryKind kind() const { return kind_; }
    bool is_point() const { return kind_ == GeometryKind::Point; }
    bool is_polygon() const { return kind_ == GeometryKind::Polygon; }

    std::span<const Ring> parts() const { return parts_; }
    const Envelope& envelope() const { return envelope_; }
    Coordinate first_coordinate() const { return parts_.front().front(); }
    std::size_t coordinate_count() const;
    std::size_t segment_count() const;

    friend bool operator==(const Geometry& a, const Geometry& b) {
        return a.kind_ == b.kind_ && a.parts_ == b.parts_;
    }

  private:
    Geometry(GeometryKind kind, std::vector<Ring> parts);

    GeometryKind kind_;
    std::vector<Ring> parts_;
    Envelope envelope_;
};

struct SpatialObject {
    ObjectId id = 0;
    Geometry geometry;
};

enum class RectRelation : std::uint8_t { Disjoint, Intersects, CoversRect };

enum class Predicate : std::uint8_t { Intersects, Contains };

enum class Location : std::uint8_t { Exterior, Boundary, Interior };

// ---- primitives -------------------------------------------------------------

/// Sign of the turn a->b->c: +1 left, -1 right, 0 when c is within kTolerance of line ab.
int orientation(Coordinate a, Coordinate b, Coordinate c);

/// Closed segment intersection; collinear overlap and endpoint contact count.
bool segments_intersect(const Segment& a, const Segment& b);

bool segment_intersects_rect(const Segment& s, const Envelope& r);
/// A point of `s` inside the closed rectangle (grown by kTolerance): the midpoint
/// of the clipped piece. Empty when they are disjoint.
std::optional<Coordinate> point_in_rect(const Segment& s, const Envelope& r);

/// True when some point of `s` lies strictly inside `r` (not only on its border).
bool segment_crosses_rect_interior(const Segment& s, const Envelope& r);

double point_segment_distance(Coordinate p, const Segment& s);
double segment_distance(const Segment& a, const Segment& b);

/// Position of `p` relative to the closed polygon region (holes excluded).
Location locate_in_polygon(Coordinate p, const Geometry& polygon);

// ---- operations -------------------------------------------------------------

/// All segments in part order. Points have none.
std::vector<Segment> segments(const Geometry& g);

Envelope envelope(const Geometry& g);

RectRelation rect_relation(const Geometry& g, const Envelope& r);

/// Whole segments of `g` that touch at least one of the rectangles.
std::vector<Segment> clip_to_rects(const Geometry& g, std::span<const Envelope> rects);

/// Red/blue intersection test: true iff some segment of `a` touches some segment
/// of `b`. X-ordered event sweep with per-colour active sets keyed by y.
bool sweep_line_intersects(std::span<const Segment> a, std::span<const Segment> b);

/// Exact predicate between the query `q` and the object `s`.
/// Contains means every point of `s` lies in the closed region of `q`.
bool exact_predicate(const Geometry& q, const Geometry& s, Predicate predicate);

/// Minimum planar Euclidean distance, 0 when the geometries intersect.
double distance(const Geometry& a, const Geometry& b);

/// A point strictly inside the polygon's region.
Coordinate interior_point(const Geometry& polygon);

}  // namespace gptree
