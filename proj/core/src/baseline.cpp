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

#include "gptree/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace gptree {

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool by_distance(const std::pair<double, ObjectId>& a, const std::pair<double, ObjectId>& b) {
    return a.first < b.first || (a.first == b.first && a.second < b.second);
}

QueryAnswer top_k(std::vector<std::pair<double, ObjectId>> scored, std::size_t k) {
    const std::size_t n = std::min(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(n), scored.end(),
                      by_distance);
    QueryAnswer out;
    for (std::size_t i = 0; i < n; ++i) {
        out.ids.push_back(scored[i].second);
        out.distances.push_back(scored[i].first);
    }
    return out;
}

// Sorts `items` into sort-tile-recursive order for runs of `capacity`.
template <typename T, typename EnvOf>
void str_order(std::vector<T>& items, std::size_t capacity, EnvOf env_of) {
    const std::size_t n = items.size();
    if (n <= capacity) return;
    const auto pages = (n + capacity - 1) / capacity;
    const auto slices = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(pages))));
    const std::size_t slice_size = slices * capacity;
    auto cx = [&](const T& t) { return env_of(t).center().x; };
    auto cy = [&](const T& t) { return env_of(t).center().y; };
    std::stable_sort(items.begin(), items.end(), [&](const T& a, const T& b) { return cx(a) < cx(b); });
    for (std::size_t s = 0; s < n; s += slice_size) {
        const auto end = std::min(n, s + slice_size);
        std::stable_sort(items.begin() + static_cast<std::ptrdiff_t>(s), items.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](const T& a, const T& b) { return cy(a) < cy(b); });
    }
}

}  // namespace

QueryAnswer oracle_query(std::span<const SpatialObject> objects, const Geometry& q, const QueryMode& mode) {
    return std::visit(
        Overloaded{
            [&](const RangeMode& m) {
                QueryAnswer out;
                for (const auto& o : objects) {
                    if (exact_predicate(q, o.geometry, m.predicate)) out.ids.push_back(o.id);
                }
                std::sort(out.ids.begin(), out.ids.end());
                return out;
            },
            [&](const DistanceMode& m) {
                if (!(m.eps > 0.0)) throw std::invalid_argument("eps must be positive");
                QueryAnswer out;
                for (const auto& o : objects) {
                    if (distance(q, o.geometry) <= m.eps) out.ids.push_back(o.id);
                }
                std::sort(out.ids.begin(), out.ids.end());
                return out;
            },
            [&](const KnnMode& m) {
                if (m.k == 0) throw std::invalid_argument("k must be positive");
                std::vector<std::pair<double, ObjectId>> scored;
                scored.reserve(objects.size());
                for (const auto& o : objects) scored.emplace_back(distance(q, o.geometry), o.id);
                return top_k(std::move(scored), m.k);
            }},
        mode);
}

StrTree StrTree::build(std::span<const SpatialObject> objects, std::size_t capacity) {
    if (capacity < 2) throw std::invalid_argument("node capacity must be at least 2");
    StrTree t;
    t.capacity_ = capacity;
    t.geometries_.reserve(objects.size());
    t.entries_.reserve(objects.size());
    for (const auto& o : objects) {
        t.entries_.push_back({o.geometry.envelope(), o.id, static_cast<std::uint32_t>(t.geometries_.size())});
        t.geometries_.push_back(o.geometry);
    }
    if (t.entries_.empty()) return t;

    str_order(t.entries_, capacity, [](const Entry& e) -> const Envelope& { return e.envelope; });
    std::vector<Node> level;
    for (std::size_t i = 0; i < t.entries_.size(); i += capacity) {
        Node n;
        n.first = static_cast<std::uint32_t>(i);
        n.count = static_cast<std::uint32_t>(std::min(capacity, t.entries_.size() - i));
        for (std::uint32_t j = 0; j < n.count; ++j) n.envelope.expand(t.entries_[i + j].envelope);
        level.push_back(n);
    }
    while (level.size() > 1) {
        str_order(level, capacity, [](const Node& n) -> const Envelope& { return n.envelope; });
        std::vector<Node> parents;
        for (std::size_t i = 0; i < level.size(); i += capacity) {
            Node n;
            n.first = static_cast<std::uint32_t>(i);
            n.count = static_cast<std::uint32_t>(std::min(capacity, level.size() - i));
            for (std::uint32_t j = 0; j < n.count; ++j) n.envelope.expand(level[i + j].envelope);
            parents.push_back(n);
        }
        t.levels_.push_back(std::move(level));
        level = std::move(parents);
    }
    t.levels_.push_back(std::move(level));
    return t;
}

std::size_t StrTree::node_count() const {
    std::size_t n = 0;
    for (const auto& l : levels_) n += l.size();
    return n;
}

Envelope StrTree::bounds() const { return levels_.empty() ? Envelope{} : levels_.back().front().envelope; }

std::uint64_t StrTree::memory_bytes() const {
    const std::uint64_t nodes = node_count();
    const std::uint64_t child_entries = nodes == 0 ? 0 : nodes - 1;
    std::uint64_t bytes = 40 * (entries_.size() + child_entries) + 8 * nodes;
    for (const auto& g : geometries_) bytes += 8 + 16 * static_cast<std::uint64_t>(g.coordinate_count());
    return bytes;
}

template <typename Fn>
void StrTree::visit(const Envelope& window, Fn&& fn) const {
    if (levels_.empty()) return;
    std::vector<std::pair<std::size_t, std::uint32_t>> stack{{levels_.size() - 1, 0}};
    while (!stack.empty()) {
        auto [depth, idx] = stack.back();
        stack.pop_back();
        const Node& n = levels_[depth][idx];
        if (!n.envelope.intersects(window)) continue;
        if (depth == 0) {
            for (std::uint32_t j = 0; j < n.count; ++j) {
                const Entry& e = entries_[n.first + j];
                if (e.envelope.intersects(window)) fn(e);
            }
            continue;
        }
        for (std::uint32_t j = 0; j < n.count; ++j) stack.emplace_back(depth - 1, n.first + j);
    }
}

std::vector<ObjectId> StrTree::range(const Geometry& q, Predicate theta, QueryStats* stats) const {
    std::vector<ObjectId> out;
    visit(q.envelope().buffered(kTolerance), [&](const Entry& e) {
        if (stats) {
            ++stats->candidates;
            ++stats->refined;
        }
        if (exact_predicate(q, geometries_[e.object], theta)) out.push_back(e.id);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ObjectId> StrTree::within(const Geometry& q, double eps, QueryStats* stats) const {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    std::vector<ObjectId> out;
    visit(q.envelope().buffered(eps), [&](const Entry& e) {
        if (stats) {
            ++stats->candidates;
            ++stats->refined;
            ++stats->distance_calls;
        }
        if (distance(q, geometries_[e.object]) <= eps) out.push_back(e.id);
    });
    std::sort(out.begin(), out.end());
    return out;
}

QueryAnswer StrTree::knn(const Geometry& q, std::size_t k, QueryStats* stats) const {
    if (k == 0) throw std::invalid_argument("k must be positive");
    QueryAnswer out;
    if (levels_.empty()) return out;
    struct Item {
        double key;
        bool object;  // nodes pop before objects at equal keys
        ObjectId id;
        std::size_t depth;
        std::uint32_t index;
    };
    auto later = [](const Item& a, const Item& b) {
        if (a.key != b.key) return a.key > b.key;
        if (a.object != b.object) return a.object;
        return a.id > b.id;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(later)> heap(later);
    const Envelope qenv = q.envelope();
    heap.push({levels_.back().front().envelope.distance_to(qenv), false, 0, levels_.size() - 1, 0});
    while (!heap.empty() && out.ids.size() < k) {
        const Item it = heap.top();
        heap.pop();
        if (it.object) {
            out.ids.push_back(it.id);
            out.distances.push_back(it.key);
            continue;
        }
        const Node& n = levels_[it.depth][it.index];
        for (std::uint32_t j = 0; j < n.count; ++j) {
            if (it.depth == 0) {
                const Entry& e = entries_[n.first + j];
                if (stats) {
                    ++stats->candidates;
                    ++stats->refined;
                    ++stats->distance_calls;
                }
                heap.push({distance(q, geometries_[e.object]), true, e.id, 0, 0});
            } else {
                const Node& c = levels_[it.depth - 1][n.first + j];
                heap.push({c.envelope.distance_to(qenv), false, 0, it.depth - 1, n.first + j});
            }
        }
    }
    return out;
}

QueryAnswer StrTree::query(const Geometry& q, const QueryMode& mode, QueryStats* stats) const {
    QueryAnswer out = std::visit(Overloaded{[&](const RangeMode& m) { return QueryAnswer{range(q, m.predicate, stats), {}}; },
                                            [&](const DistanceMode& m) { return QueryAnswer{within(q, m.eps, stats), {}}; },
                                            [&](const KnnMode& m) { return knn(q, m.k, stats); }},
                                 mode);
    if (stats) stats->results += out.ids.size();
    return out;
}

}  // namespace gptree
