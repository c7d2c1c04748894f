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

#include "naive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gptree::testing {

namespace {

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

std::vector<Segment> all_segments(const Geometry& g) {
    std::vector<Segment> out;
    for (const auto& ring : g.parts()) {
        for (std::size_t i = 0; i + 1 < ring.size(); ++i) out.push_back({ring[i], ring[i + 1]});
    }
    return out;
}

Coordinate at(const Segment& s, double t) {
    return {s.start.x + t * (s.end.x - s.start.x), s.start.y + t * (s.end.y - s.start.y)};
}

// Parameters along `seg` where it meets any of `others`, plus both ends.
std::vector<double> breakpoints(const Segment& seg, const std::vector<Segment>& others) {
    std::vector<double> ts{0.0, 1.0};
    const double dx = seg.end.x - seg.start.x;
    const double dy = seg.end.y - seg.start.y;
    const double len2 = dx * dx + dy * dy;
    for (const auto& o : others) {
        const double ex = o.end.x - o.start.x;
        const double ey = o.end.y - o.start.y;
        const double denom = cross(dx, dy, ex, ey);
        if (denom != 0.0) {
            const double t = cross(o.start.x - seg.start.x, o.start.y - seg.start.y, ex, ey) / denom;
            if (t > 0.0 && t < 1.0) ts.push_back(t);
        }
        for (Coordinate p : {o.start, o.end}) {
            if (len2 == 0.0) continue;
            const double t = ((p.x - seg.start.x) * dx + (p.y - seg.start.y) * dy) / len2;
            if (t > 0.0 && t < 1.0) ts.push_back(t);
        }
    }
    std::sort(ts.begin(), ts.end());
    return ts;
}

// Probe points of `seg`: breakpoints and the midpoints between them.
std::vector<Coordinate> probes(const Segment& seg, const std::vector<Segment>& others) {
    const auto ts = breakpoints(seg, others);
    std::vector<Coordinate> out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out.push_back(at(seg, ts[i]));
        if (i + 1 < ts.size()) out.push_back(at(seg, (ts[i] + ts[i + 1]) / 2.0));
    }
    return out;
}

Geometry rect_polygon(const Envelope& r) {
    return Geometry::polygon({{{r.min_x, r.min_y}, {r.max_x, r.min_y}, {r.max_x, r.max_y},
                               {r.min_x, r.max_y}, {r.min_x, r.min_y}}});
}

}  // namespace

std::uint64_t naive_interleave(std::uint32_t col, std::uint32_t row, int level) {
    std::uint64_t out = 0;
    for (int i = level - 1; i >= 0; --i) {
        out = (out << 1) | ((col >> i) & 1u);
        out = (out << 1) | ((row >> i) & 1u);
    }
    return out;
}

double naive_point_segment_distance(Coordinate p, const Segment& s) {
    const double dx = s.end.x - s.start.x;
    const double dy = s.end.y - s.start.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 == 0.0 ? 0.0 : ((p.x - s.start.x) * dx + (p.y - s.start.y) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    const Coordinate c = at(s, t);
    return std::hypot(p.x - c.x, p.y - c.y);
}

bool naive_segments_meet(const Segment& a, const Segment& b) {
    const double dx = a.end.x - a.start.x;
    const double dy = a.end.y - a.start.y;
    const double ex = b.end.x - b.start.x;
    const double ey = b.end.y - b.start.y;
    const double denom = cross(dx, dy, ex, ey);
    if (denom != 0.0) {
        const double t = cross(b.start.x - a.start.x, b.start.y - a.start.y, ex, ey) / denom;
        const double u = cross(b.start.x - a.start.x, b.start.y - a.start.y, dx, dy) / denom;
        if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) return true;
    }
    return naive_point_segment_distance(a.start, b) <= kEps || naive_point_segment_distance(a.end, b) <= kEps ||
           naive_point_segment_distance(b.start, a) <= kEps || naive_point_segment_distance(b.end, a) <= kEps;
}

int naive_locate(Coordinate p, const Geometry& polygon) {
    const auto segs = all_segments(polygon);
    for (const auto& s : segs) {
        if (naive_point_segment_distance(p, s) <= kEps) return 0;
    }
    bool inside = false;
    for (const auto& s : segs) {
        const bool up = s.start.y <= p.y && p.y < s.end.y;
        const bool down = s.end.y <= p.y && p.y < s.start.y;
        if (!up && !down) continue;
        const double x = s.start.x + (p.y - s.start.y) / (s.end.y - s.start.y) * (s.end.x - s.start.x);
        if (x > p.x) inside = !inside;
    }
    return inside ? 1 : -1;
}

bool naive_covers_point(const Geometry& g, Coordinate p) {
    switch (g.kind()) {
        case GeometryKind::Point: {
            const Coordinate c = g.parts().front().front();
            return std::hypot(p.x - c.x, p.y - c.y) <= kEps;
        }
        case GeometryKind::LineString:
            for (const auto& s : all_segments(g)) {
                if (naive_point_segment_distance(p, s) <= kEps) return true;
            }
            return false;
        case GeometryKind::Polygon: return naive_locate(p, g) >= 0;
    }
    return false;
}

bool naive_intersects(const Geometry& a, const Geometry& b) {
    if (a.is_point()) return naive_covers_point(b, a.parts().front().front());
    if (b.is_point()) return naive_covers_point(a, b.parts().front().front());
    const auto sa = all_segments(a);
    const auto sb = all_segments(b);
    for (const auto& x : sa) {
        for (const auto& y : sb) {
            if (naive_segments_meet(x, y)) return true;
        }
    }
    if (a.is_polygon() && naive_locate(b.parts().front().front(), a) >= 0) return true;
    if (b.is_polygon() && naive_locate(a.parts().front().front(), b) >= 0) return true;
    return false;
}

bool naive_contains(const Geometry& q, const Geometry& s) {
    if (s.is_point()) return naive_covers_point(q, s.parts().front().front());
    if (q.is_point()) return false;
    if (s.is_polygon() && !q.is_polygon()) return false;
    const auto qs = all_segments(q);
    for (const auto& seg : all_segments(s)) {
        for (Coordinate p : probes(seg, qs)) {
            if (!naive_covers_point(q, p)) return false;
        }
    }
    if (s.is_polygon()) {
        // no part of q's boundary may run through the open interior of s
        const auto ss = all_segments(s);
        for (const auto& seg : qs) {
            for (Coordinate p : probes(seg, ss)) {
                if (naive_locate(p, s) == 1) return false;
            }
        }
    }
    return true;
}

double naive_distance(const Geometry& a, const Geometry& b) {
    if (naive_intersects(a, b)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    const auto sa = all_segments(a);
    const auto sb = all_segments(b);
    auto points_of = [](const Geometry& g) {
        std::vector<Coordinate> out;
        for (const auto& ring : g.parts()) out.insert(out.end(), ring.begin(), ring.end());
        return out;
    };
    const auto pa = points_of(a);
    const auto pb = points_of(b);
    if (sa.empty() && sb.empty()) {
        return std::hypot(pa[0].x - pb[0].x, pa[0].y - pb[0].y);
    }
    for (Coordinate p : pa) {
        for (const auto& s : sb) best = std::min(best, naive_point_segment_distance(p, s));
    }
    for (Coordinate p : pb) {
        for (const auto& s : sa) best = std::min(best, naive_point_segment_distance(p, s));
    }
    return best;
}

bool naive_touches_rect(const Geometry& g, const Envelope& r) { return naive_intersects(g, rect_polygon(r)); }

bool naive_covers_rect(const Geometry& g, const Envelope& r) {
    return g.is_polygon() && naive_contains(g, rect_polygon(r));
}

std::vector<ObjectId> naive_range(std::span<const SpatialObject> objects, const Geometry& q, bool contains) {
    std::vector<ObjectId> out;
    for (const auto& o : objects) {
        if (contains ? naive_contains(q, o.geometry) : naive_intersects(q, o.geometry)) out.push_back(o.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ObjectId> naive_within(std::span<const SpatialObject> objects, const Geometry& q, double eps) {
    std::vector<ObjectId> out;
    for (const auto& o : objects) {
        if (naive_distance(q, o.geometry) <= eps) out.push_back(o.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NaiveNeighbor> naive_knn(std::span<const SpatialObject> objects, const Geometry& q, std::size_t k) {
    std::vector<NaiveNeighbor> all;
    all.reserve(objects.size());
    for (const auto& o : objects) all.push_back({o.id, naive_distance(q, o.geometry)});
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
    });
    all.resize(std::min(k, all.size()));
    return all;
}

std::string describe(const std::vector<ObjectId>& ids) {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? "," : "") << ids[i];
    out << ']';
    return out.str();
}

}  // namespace gptree::testing
