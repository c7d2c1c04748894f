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

#include "gptree/bench/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace gptree::bench {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Coordinate clamp_to(Coordinate c, const Envelope& e) {
    return {std::clamp(c.x, e.min_x, e.max_x), std::clamp(c.y, e.min_y, e.max_y)};
}

std::size_t draw_segments(Rng& rng, double avg) {
    const auto mean = std::max<long long>(1, std::llround(avg));
    const auto lo = std::max<long long>(1, std::llround(avg * 0.5));
    const auto hi = std::max(lo, 2 * mean - lo);
    return static_cast<std::size_t>(std::uniform_int_distribution<long long>(lo, hi)(rng));
}

// Star-shaped ring: increasing angles with jittered radii, shifted to fit `e`.
Geometry star_polygon(Rng& rng, Coordinate center, double radius, std::size_t n, const Envelope& e) {
    n = std::max<std::size_t>(n, 3);
    std::vector<double> angles(n);
    for (std::size_t i = 0; i < n; ++i) {
        angles[i] = (static_cast<double>(i) + uniform(rng, 0.1, 0.9)) * 2.0 * std::numbers::pi / static_cast<double>(n);
    }
    radius = std::min({radius, e.width() / 2.1, e.height() / 2.1});
    std::vector<Coordinate> ring;
    ring.reserve(n + 1);
    for (double a : angles) {
        const double r = radius * uniform(rng, 0.55, 1.0);
        ring.push_back({r * std::cos(a), r * std::sin(a)});
    }
    Envelope local;
    for (const auto& c : ring) local.expand(c);
    const double cx = std::clamp(center.x, e.min_x - local.min_x, e.max_x - local.max_x);
    const double cy = std::clamp(center.y, e.min_y - local.min_y, e.max_y - local.max_y);
    for (auto& c : ring) c = clamp_to({c.x + cx, c.y + cy}, e);
    ring.push_back(ring.front());
    return Geometry::polygon({std::move(ring)});
}

Geometry random_walk(Rng& rng, Coordinate start, double length, std::size_t n, const Envelope& e) {
    std::normal_distribution<double> turn(0.0, 0.6);
    std::vector<Coordinate> coords{clamp_to(start, e)};
    double heading = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double base = length / static_cast<double>(n);
    while (coords.size() < n + 1) {
        heading += turn(rng);
        const double step = base * uniform(rng, 0.5, 1.5);
        const Coordinate cur = coords.back();
        Coordinate next{cur.x + step * std::cos(heading), cur.y + step * std::sin(heading)};
        if (next.x < e.min_x || next.x > e.max_x) {
            heading = std::numbers::pi - heading;
            next.x = cur.x + step * std::cos(heading);
        }
        if (next.y < e.min_y || next.y > e.max_y) {
            heading = -heading;
            next.y = cur.y + step * std::sin(heading);
        }
        next = clamp_to(next, e);
        if (next != cur) coords.push_back(next);
    }
    return Geometry::line_string(std::move(coords));
}

}  // namespace

std::vector<SpatialObject> generate_synthetic(const SyntheticSpec& spec) {
    if (spec.count == 0) throw std::invalid_argument("count must be positive");
    const double total = spec.mix.point + spec.mix.line_string + spec.mix.polygon;
    if (!(total > 0.0) || spec.mix.point < 0.0 || spec.mix.line_string < 0.0 || spec.mix.polygon < 0.0) {
        throw std::invalid_argument("kind mix needs a positive weight");
    }
    const Envelope& e = spec.extent;
    Rng rng(spec.seed);
    std::vector<Coordinate> clusters;
    for (std::size_t i = 0; i < spec.cluster_count; ++i) {
        clusters.push_back({uniform(rng, e.min_x + 0.1 * e.width(), e.max_x - 0.1 * e.width()),
                            uniform(rng, e.min_y + 0.1 * e.height(), e.max_y - 0.1 * e.height())});
    }
    std::normal_distribution<double> spread(0.0, spec.cluster_spread * e.width());
    auto anchor = [&]() -> Coordinate {
        if (clusters.empty()) return {uniform(rng, e.min_x, e.max_x), uniform(rng, e.min_y, e.max_y)};
        const auto& c = clusters[std::uniform_int_distribution<std::size_t>(0, clusters.size() - 1)(rng)];
        Coordinate p{};
        for (int attempt = 0; attempt < 16; ++attempt) {
            p = {c.x + spread(rng), c.y + spread(rng)};
            if (e.contains(p)) return p;
        }
        return clamp_to(p, e);
    };
    const double size = spec.object_size * e.width();
    std::vector<SpatialObject> out;
    out.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
        const double pick = uniform(rng, 0.0, total);
        const Coordinate a = anchor();
        Geometry g;
        if (pick < spec.mix.point) {
            g = Geometry::point(a);
        } else if (pick < spec.mix.point + spec.mix.line_string) {
            g = random_walk(rng, a, size * uniform(rng, 0.5, 1.5), draw_segments(rng, spec.avg_segments), e);
        } else {
            g = star_polygon(rng, a, size * uniform(rng, 0.25, 0.75), draw_segments(rng, spec.avg_segments), e);
        }
        out.push_back({static_cast<ObjectId>(i), std::move(g)});
    }
    return out;
}

std::vector<Geometry> generate_queries(const QuerySpec& spec, const Envelope& extent,
                                       const std::vector<SpatialObject>& anchors) {
    Rng rng(spec.seed);
    const double size = spec.size * extent.width();
    std::vector<Geometry> out;
    out.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
        Coordinate c{uniform(rng, extent.min_x, extent.max_x), uniform(rng, extent.min_y, extent.max_y)};
        if (!anchors.empty()) {
            const auto& o = anchors[std::uniform_int_distribution<std::size_t>(0, anchors.size() - 1)(rng)];
            const Coordinate base = o.geometry.envelope().center();
            c = clamp_to({base.x + uniform(rng, -size, size), base.y + uniform(rng, -size, size)}, extent);
        }
        switch (spec.shape) {
            case QueryShape::Point:
                out.push_back(Geometry::point(c));
                break;
            case QueryShape::Box: {
                const double hw = std::min(size / 2.0, extent.width() / 2.1);
                const double hh = std::min(size / 2.0, extent.height() / 2.1);
                const double x = std::clamp(c.x, extent.min_x + hw, extent.max_x - hw);
                const double y = std::clamp(c.y, extent.min_y + hh, extent.max_y - hh);
                out.push_back(Geometry::polygon(
                    {{{x - hw, y - hh}, {x + hw, y - hh}, {x + hw, y + hh}, {x - hw, y + hh}, {x - hw, y - hh}}}));
                break;
            }
            case QueryShape::Polygon:
                out.push_back(star_polygon(rng, c, size / 2.0, spec.vertices, extent));
                break;
        }
    }
    return out;
}

}  // namespace gptree::bench
