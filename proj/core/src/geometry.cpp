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

#include "gptree/geometry.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "gptree/error.hpp"

namespace gptree {

namespace {

bool finite(Coordinate c) { return std::isfinite(c.x) && std::isfinite(c.y); }

std::vector<Coordinate> collapse_duplicates(std::vector<Coordinate> coords) {
    auto last = std::unique(coords.begin(), coords.end());
    coords.erase(last, coords.end());
    return coords;
}

double cross(Coordinate o, Coordinate a, Coordinate b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool within_box(Coordinate p, const Segment& s) {
    return std::min(s.start.x, s.end.x) - kTolerance <= p.x &&
           p.x <= std::max(s.start.x, s.end.x) + kTolerance &&
           std::min(s.start.y, s.end.y) - kTolerance <= p.y &&
           p.y <= std::max(s.start.y, s.end.y) + kTolerance;
}

// Liang-Barsky parameter interval of `s` inside the closed rectangle `r`.
std::optional<std::pair<double, double>> clip_interval(const Segment& s, const Envelope& r) {
    double t0 = 0.0;
    double t1 = 1.0;
    const double dx = s.end.x - s.start.x;
    const double dy = s.end.y - s.start.y;
    auto clip = [&](double p, double q) {
        if (p == 0.0) return q >= 0.0;
        const double t = q / p;
        if (p < 0.0) {
            if (t > t1) return false;
            t0 = std::max(t0, t);
        } else {
            if (t < t0) return false;
            t1 = std::min(t1, t);
        }
        return true;
    };
    if (clip(-dx, s.start.x - r.min_x) && clip(dx, r.max_x - s.start.x) &&
        clip(-dy, s.start.y - r.min_y) && clip(dy, r.max_y - s.start.y)) {
        return std::make_pair(t0, t1);
    }
    return std::nullopt;
}

Coordinate lerp(const Segment& s, double t) {
    return {s.start.x + (s.end.x - s.start.x) * t, s.start.y + (s.end.y - s.start.y) * t};
}

template <typename Fn>
void for_each_segment(const Geometry& g, Fn&& fn) {
    for (const auto& part : g.parts()) {
        for (std::size_t i = 0; i + 1 < part.size(); ++i) fn(Segment{part[i], part[i + 1]});
    }
}

// Segments, with a point represented by one zero-length segment.
std::vector<Segment> edges(const Geometry& g) {
    if (g.is_point()) {
        const auto p = g.first_coordinate();
        return {Segment{p, p}};
    }
    return segments(g);
}

void validate_ring(const Geometry::Ring& ring) {
    if (ring.size() < 4) throw GeometryError("polygon ring needs at least 4 coordinates");
    if (ring.front() != ring.back()) throw GeometryError("polygon ring is not closed");
    const std::size_t n = ring.size() - 1;
    std::vector<Segment> segs;
    segs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) segs.push_back({ring[i], ring[i + 1]});
    std::vector<Envelope> boxes;
    boxes.reserve(n);
    for (const auto& s : segs) boxes.push_back(s.envelope().buffered(kTolerance));
    for (std::size_t i = 0; i < n; ++i) {
        // adjacent segments may only share their common vertex
        const auto& a = segs[i];
        const auto& b = segs[(i + 1) % n];
        if (orientation(a.start, a.end, b.end) == 0) {
            const double dot = (a.start.x - a.end.x) * (b.end.x - a.end.x) +
                               (a.start.y - a.end.y) * (b.end.y - a.end.y);
            if (dot > 0.0) throw GeometryError("polygon ring folds back on itself");
        }
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (!boxes[i].intersects(boxes[j])) continue;
            if (segments_intersect(segs[i], segs[j])) {
                throw GeometryError("polygon ring self-intersects between segments " +
                                    std::to_string(i) + " and " + std::to_string(j));
            }
        }
    }
}

bool point_on_line(Coordinate p, const Geometry& line) {
    bool hit = false;
    for_each_segment(line, [&](const Segment& s) {
        if (!hit && point_segment_distance(p, s) <= kTolerance) hit = true;
    });
    return hit;
}

bool any_segment_pair_intersects(const std::vector<Segment>& a, const std::vector<Segment>& b) {
    if (a.size() * b.size() > 256) return sweep_line_intersects(a, b);
    for (const auto& sa : a) {
        const auto ea = sa.envelope().buffered(kTolerance);
        for (const auto& sb : b) {
            if (ea.intersects(sb.envelope()) && segments_intersect(sa, sb)) return true;
        }
    }
    return false;
}

bool geometries_intersect(const Geometry& a, const Geometry& b) {
    if (!a.envelope().buffered(kTolerance).intersects(b.envelope())) return false;
    if (a.is_point() && b.is_point()) {
        return distance(a.first_coordinate(), b.first_coordinate()) <= kTolerance;
    }
    if (a.is_point() || b.is_point()) {
        const Geometry& pt = a.is_point() ? a : b;
        const Geometry& other = a.is_point() ? b : a;
        if (other.is_polygon()) {
            return locate_in_polygon(pt.first_coordinate(), other) != Location::Exterior;
        }
        return point_on_line(pt.first_coordinate(), other);
    }
    if (any_segment_pair_intersects(segments(a), segments(b))) return true;
    // no boundary contact: one geometry is either wholly inside the other or apart
    if (b.is_polygon() && locate_in_polygon(a.first_coordinate(), b) != Location::Exterior) {
        return true;
    }
    if (a.is_polygon() && locate_in_polygon(b.first_coordinate(), a) != Location::Exterior) {
        return true;
    }
    return false;
}

// Parameters along `s` where it meets any of `others`, including the ends of
// collinear overlaps. Always contains 0 and 1.
std::vector<double> split_parameters(const Segment& s, std::span<const Segment> others) {
    std::vector<double> ts{0.0, 1.0};
    const double dx = s.end.x - s.start.x;
    const double dy = s.end.y - s.start.y;
    const double len2 = dx * dx + dy * dy;
    if (len2 == 0.0) return ts;
    const auto env = s.envelope().buffered(kTolerance);
    auto project = [&](Coordinate p) {
        return std::clamp(((p.x - s.start.x) * dx + (p.y - s.start.y) * dy) / len2, 0.0, 1.0);
    };
    for (const auto& o : others) {
        if (!env.intersects(o.envelope()) || !segments_intersect(s, o)) continue;
        const double ox = o.end.x - o.start.x;
        const double oy = o.end.y - o.start.y;
        const double denom = dx * oy - dy * ox;
        const bool collinear = orientation(s.start, s.end, o.start) == 0 &&
                               orientation(s.start, s.end, o.end) == 0;
        if (collinear || std::abs(denom) <= kTolerance * kTolerance) {
            ts.push_back(project(o.start));
            ts.push_back(project(o.end));
        } else {
            const double t =
                ((o.start.x - s.start.x) * oy - (o.start.y - s.start.y) * ox) / denom;
            ts.push_back(std::clamp(t, 0.0, 1.0));
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

// Every point of `path` segments (vertices and pieces between boundary contacts)
// satisfies `accept`.
template <typename Accept>
bool pieces_all(const std::vector<Segment>& path, std::span<const Segment> boundary,
                Accept&& accept) {
    for (const auto& s : path) {
        const auto ts = split_parameters(s, boundary);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (!accept(lerp(s, ts[i]))) return false;
            if (i + 1 < ts.size() && !accept(lerp(s, (ts[i] + ts[i + 1]) / 2.0))) return false;
        }
    }
    return true;
}

bool segment_covered_by_line(const Segment& s, const std::vector<Segment>& line) {
    const double dx = s.end.x - s.start.x;
    const double dy = s.end.y - s.start.y;
    const double len2 = dx * dx + dy * dy;
    std::vector<std::pair<double, double>> spans;
    for (const auto& o : line) {
        if (orientation(s.start, s.end, o.start) != 0 || orientation(s.start, s.end, o.end) != 0) {
            continue;
        }
        double a = ((o.start.x - s.start.x) * dx + (o.start.y - s.start.y) * dy) / len2;
        double b = ((o.end.x - s.start.x) * dx + (o.end.y - s.start.y) * dy) / len2;
        if (a > b) std::swap(a, b);
        spans.emplace_back(a, b);
    }
    std::sort(spans.begin(), spans.end());
    const double eps = kTolerance / std::sqrt(len2);
    double reach = 0.0;
    for (const auto& [a, b] : spans) {
        if (a > reach + eps) return false;
        reach = std::max(reach, b);
        if (reach >= 1.0 - eps) return true;
    }
    return reach >= 1.0 - eps;
}

bool covers(const Geometry& q, const Geometry& s) {
    if (!q.envelope().buffered(kTolerance).contains(s.envelope())) return false;
    switch (q.kind()) {
        case GeometryKind::Point:
            return s.is_point() &&
                   distance(q.first_coordinate(), s.first_coordinate()) <= kTolerance;
        case GeometryKind::LineString: {
            if (s.is_point()) return point_on_line(s.first_coordinate(), q);
            if (s.is_polygon()) return false;
            const auto qs = segments(q);
            for (const auto& seg : segments(s)) {
                if (!segment_covered_by_line(seg, qs)) return false;
            }
            return true;
        }
        case GeometryKind::Polygon: break;
    }
    if (s.is_point()) return locate_in_polygon(s.first_coordinate(), q) != Location::Exterior;
    const auto q_boundary = segments(q);
    const auto s_segments = segments(s);
    const bool path_inside = pieces_all(s_segments, q_boundary, [&](Coordinate p) {
        return locate_in_polygon(p, q) != Location::Exterior;
    });
    if (!path_inside || !s.is_polygon()) return path_inside;
    // q's boundary must not enter the interior of s
    const bool boundary_outside = pieces_all(q_boundary, s_segments, [&](Coordinate p) {
        return locate_in_polygon(p, s) != Location::Interior;
    });
    if (!boundary_outside) return false;
    return locate_in_polygon(interior_point(s), q) != Location::Exterior;
}

}  // namespace

const char* to_string(GeometryKind kind) {
    switch (kind) {
        case GeometryKind::Point: return "POINT";
        case GeometryKind::LineString: return "LINESTRING";
        case GeometryKind::Polygon: return "POLYGON";
    }
    return "?";
}

Geometry::Geometry(GeometryKind kind, std::vector<Ring> parts)
    : kind_(kind), parts_(std::move(parts)) {
    for (const auto& part : parts_) {
        for (const auto& c : part) {
            if (!finite(c)) throw GeometryError("coordinate is not finite");
            envelope_.expand(c);
        }
    }
}

Geometry Geometry::point(Coordinate c) { return Geometry(GeometryKind::Point, {{c}}); }

Geometry Geometry::line_string(std::vector<Coordinate> coords) {
    coords = collapse_duplicates(std::move(coords));
    if (coords.size() < 2) throw GeometryError("line string needs at least 2 distinct coordinates");
    return Geometry(GeometryKind::LineString, {std::move(coords)});
}

Geometry Geometry::polygon(std::vector<Ring> rings) {
    if (rings.empty()) throw GeometryError("polygon needs an exterior ring");
    for (auto& ring : rings) {
        ring = collapse_duplicates(std::move(ring));
        for (const auto& c : ring) {
            if (!finite(c)) throw GeometryError("coordinate is not finite");
        }
        validate_ring(ring);
    }
    return Geometry(GeometryKind::Polygon, std::move(rings));
}

std::size_t Geometry::coordinate_count() const {
    std::size_t n = 0;
    for (const auto& part : parts_) n += part.size();
    return n;
}

std::size_t Geometry::segment_count() const {
    if (is_point()) return 0;
    return coordinate_count() - parts_.size();
}

int orientation(Coordinate a, Coordinate b, Coordinate c) {
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const double cr = cross(a, b, c);
    // |cr| / len is the distance of c from the line through a and b
    if (len == 0.0 || std::abs(cr) <= kTolerance * len) return 0;
    return cr > 0.0 ? 1 : -1;
}

bool segments_intersect(const Segment& a, const Segment& b) {
    const int o1 = orientation(a.start, a.end, b.start);
    const int o2 = orientation(a.start, a.end, b.end);
    const int o3 = orientation(b.start, b.end, a.start);
    const int o4 = orientation(b.start, b.end, a.end);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && within_box(b.start, a) && point_segment_distance(b.start, a) <= kTolerance) {
        return true;
    }
    if (o2 == 0 && within_box(b.end, a) && point_segment_distance(b.end, a) <= kTolerance) {
        return true;
    }
    if (o3 == 0 && within_box(a.start, b) && point_segment_distance(a.start, b) <= kTolerance) {
        return true;
    }
    if (o4 == 0 && within_box(a.end, b) && point_segment_distance(a.end, b) <= kTolerance) {
        return true;
    }
    return false;
}

bool segment_intersects_rect(const Segment& s, const Envelope& r) {
    const auto grown = r.buffered(kTolerance);
    if (!grown.intersects(s.envelope())) return false;
    return clip_interval(s, grown).has_value();
}

std::optional<Coordinate> point_in_rect(const Segment& s, const Envelope& r) {
    const auto grown = r.buffered(kTolerance);
    if (!grown.intersects(s.envelope())) return std::nullopt;
    const auto interval = clip_interval(s, grown);
    if (!interval) return std::nullopt;
    return lerp(s, (interval->first + interval->second) / 2.0);
}

bool segment_crosses_rect_interior(const Segment& s, const Envelope& r) {
    if (!r.intersects(s.envelope())) return false;
    const auto interval = clip_interval(s, r);
    if (!interval) return false;
    const auto m = lerp(s, (interval->first + interval->second) / 2.0);
    return r.min_x + kTolerance < m.x && m.x < r.max_x - kTolerance && r.min_y + kTolerance < m.y &&
           m.y < r.max_y - kTolerance;
}

double point_segment_distance(Coordinate p, const Segment& s) {
    const double dx = s.end.x - s.start.x;
    const double dy = s.end.y - s.start.y;
    const double len2 = dx * dx + dy * dy;
    if (len2 == 0.0) return distance(p, s.start);
    const double t = std::clamp(((p.x - s.start.x) * dx + (p.y - s.start.y) * dy) / len2, 0.0, 1.0);
    return distance(p, lerp(s, t));
}

double segment_distance(const Segment& a, const Segment& b) {
    if (segments_intersect(a, b)) return 0.0;
    return std::min({point_segment_distance(a.start, b), point_segment_distance(a.end, b),
                     point_segment_distance(b.start, a), point_segment_distance(b.end, a)});
}

Location locate_in_polygon(Coordinate p, const Geometry& polygon) {
    if (!polygon.envelope().buffered(kTolerance).contains(p)) return Location::Exterior;
    bool inside = false;
    for (const auto& ring : polygon.parts()) {
        for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
            const Coordinate a = ring[i];
            const Coordinate b = ring[i + 1];
            const Segment s{a, b};
            if (within_box(p, s) && point_segment_distance(p, s) <= kTolerance) {
                return Location::Boundary;
            }
            if ((a.y > p.y) != (b.y > p.y)) {
                const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if (p.x < x) inside = !inside;
            }
        }
    }
    return inside ? Location::Interior : Location::Exterior;
}

std::vector<Segment> segments(const Geometry& g) {
    std::vector<Segment> out;
    out.reserve(g.segment_count());
    for_each_segment(g, [&](const Segment& s) { out.push_back(s); });
    return out;
}

Envelope envelope(const Geometry& g) { return g.envelope(); }

RectRelation rect_relation(const Geometry& g, const Envelope& r) {
    if (!g.envelope().intersects(r.buffered(kTolerance))) return RectRelation::Disjoint;
    switch (g.kind()) {
        case GeometryKind::Point:
            return r.buffered(kTolerance).contains(g.first_coordinate()) ? RectRelation::Intersects
                                                                         : RectRelation::Disjoint;
        case GeometryKind::LineString: {
            bool hit = false;
            for_each_segment(g, [&](const Segment& s) {
                if (!hit && segment_intersects_rect(s, r)) hit = true;
            });
            return hit ? RectRelation::Intersects : RectRelation::Disjoint;
        }
        case GeometryKind::Polygon: break;
    }
    bool touches = false;
    bool crosses = false;
    for_each_segment(g, [&](const Segment& s) {
        if (crosses || !segment_intersects_rect(s, r)) return;
        touches = true;
        if (segment_crosses_rect_interior(s, r)) crosses = true;
    });
    if (crosses) return RectRelation::Intersects;
    // the open rectangle holds no boundary, so its centre decides
    if (locate_in_polygon(r.center(), g) != Location::Exterior) return RectRelation::CoversRect;
    return touches ? RectRelation::Intersects : RectRelation::Disjoint;
}

std::vector<Segment> clip_to_rects(const Geometry& g, std::span<const Envelope> rects) {
    std::vector<Segment> out;
    for_each_segment(g, [&](const Segment& s) {
        for (const auto& r : rects) {
            if (segment_intersects_rect(s, r)) {
                out.push_back(s);
                return;
            }
        }
    });
    return out;
}

bool sweep_line_intersects(std::span<const Segment> a, std::span<const Segment> b) {
    if (a.empty() || b.empty()) return false;
    struct Event {
        double x;
        bool insert;
        std::uint8_t colour;
        std::uint32_t index;
    };
    std::vector<Event> events;
    events.reserve(2 * (a.size() + b.size()));
    const std::span<const Segment> sets[2] = {a, b};
    for (std::uint8_t c = 0; c < 2; ++c) {
        for (std::uint32_t i = 0; i < sets[c].size(); ++i) {
            const auto e = sets[c][i].envelope();
            events.push_back({e.min_x - kTolerance, true, c, i});
            events.push_back({e.max_x + kTolerance, false, c, i});
        }
    }
    std::sort(events.begin(), events.end(), [](const Event& l, const Event& r) {
        if (l.x != r.x) return l.x < r.x;
        return l.insert && !r.insert;
    });

    using Active = std::multimap<double, std::uint32_t>;
    Active active[2];
    std::vector<Active::iterator> handles[2] = {std::vector<Active::iterator>(a.size()),
                                                std::vector<Active::iterator>(b.size())};
    for (const auto& ev : events) {
        if (!ev.insert) {
            active[ev.colour].erase(handles[ev.colour][ev.index]);
            continue;
        }
        const Segment& s = sets[ev.colour][ev.index];
        const auto env = s.envelope().buffered(kTolerance);
        const std::uint8_t other = 1 - ev.colour;
        const auto stop = active[other].upper_bound(env.max_y);
        for (auto it = active[other].begin(); it != stop; ++it) {
            const Segment& t = sets[other][it->second];
            if (t.envelope().max_y < env.min_y) continue;
            if (segments_intersect(s, t)) return true;
        }
        handles[ev.colour][ev.index] = active[ev.colour].emplace(env.min_y, ev.index);
    }
    return false;
}

bool exact_predicate(const Geometry& q, const Geometry& s, Predicate predicate) {
    if (predicate == Predicate::Contains) return covers(q, s);
    return geometries_intersect(q, s);
}

double distance(const Geometry& a, const Geometry& b) {
    if (geometries_intersect(a, b)) return 0.0;
    const auto ea = edges(a);
    const auto eb = edges(b);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& sa : ea) {
        const auto box = sa.envelope();
        for (const auto& sb : eb) {
            if (box.distance_to(sb.envelope()) >= best) continue;
            best = std::min(best, segment_distance(sa, sb));
        }
    }
    return best;
}

Coordinate interior_point(const Geometry& polygon) {
    std::vector<double> ys;
    for (const auto& ring : polygon.parts()) {
        for (const auto& c : ring) ys.push_back(c.y);
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    double y = ys.front();
    double widest_gap = -1.0;
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        if (ys[i + 1] - ys[i] > widest_gap) {
            widest_gap = ys[i + 1] - ys[i];
            y = (ys[i] + ys[i + 1]) / 2.0;
        }
    }
    std::vector<double> xs;
    for (const auto& ring : polygon.parts()) {
        for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
            const Coordinate p = ring[i];
            const Coordinate r = ring[i + 1];
            if ((p.y > y) != (r.y > y)) xs.push_back(p.x + (y - p.y) * (r.x - p.x) / (r.y - p.y));
        }
    }
    std::sort(xs.begin(), xs.end());
    Coordinate best = polygon.envelope().center();
    double widest = -1.0;
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
        if (xs[i + 1] - xs[i] > widest) {
            widest = xs[i + 1] - xs[i];
            best = {(xs[i] + xs[i + 1]) / 2.0, y};
        }
    }
    return best;
}

}  // namespace gptree
