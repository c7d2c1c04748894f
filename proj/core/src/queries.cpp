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

#include "gptree/queries.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "gptree/error.hpp"

namespace gptree {

namespace {

using Clock = std::chrono::steady_clock;

DecompositionConfig query_config(const GPTree& tree, std::optional<int> envelope_depth) {
    DecompositionConfig cfg = tree.config();
    if (envelope_depth) {
        cfg.envelope_depth = *envelope_depth;
        cfg.validate();
    }
    return cfg;
}

// Open-addressing map from object id to candidate slot, rebuilt per query.
class SlotMap {
  public:
    std::pair<std::uint32_t, bool> try_emplace(ObjectId id, std::uint32_t slot) {
        if ((size_ + 1) * 2 > keys_.size()) rehash(std::max<std::size_t>(64, keys_.size() * 2));
        std::size_t i = bucket(id);
        while (used_[i]) {
            if (keys_[i] == id) return {slots_[i], false};
            i = (i + 1) & mask_;
        }
        used_[i] = 1;
        keys_[i] = id;
        slots_[i] = slot;
        ++size_;
        return {slot, true};
    }

  private:
    std::size_t bucket(ObjectId id) const {
        return static_cast<std::size_t>((id * 0x9E3779B97F4A7C15ull) >> 32) & mask_;
    }

    void rehash(std::size_t capacity) {
        std::vector<ObjectId> keys(capacity);
        std::vector<std::uint32_t> slots(capacity);
        std::vector<std::uint8_t> used(capacity, 0);
        std::swap(keys, keys_);
        std::swap(slots, slots_);
        std::swap(used, used_);
        mask_ = capacity - 1;
        for (std::size_t i = 0; i < used.size(); ++i) {
            if (!used[i]) continue;
            std::size_t j = bucket(keys[i]);
            while (used_[j]) j = (j + 1) & mask_;
            used_[j] = 1;
            keys_[j] = keys[i];
            slots_[j] = slots[i];
        }
    }

    std::vector<ObjectId> keys_;
    std::vector<std::uint32_t> slots_;
    std::vector<std::uint8_t> used_;
    std::size_t mask_ = 0;
    std::size_t size_ = 0;
};

double micros_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
}

struct Window {
    std::uint32_t col0, col1, row0, row1;

    bool contains(const CellIndex& i) const {
        return col0 <= i.col && i.col <= col1 && row0 <= i.row && i.row <= row1;
    }
};

// Aligned quadtree blocks exactly covering the window of level-`level` cells.
void cover_window(const CellCode& node, std::uint32_t x0, std::uint32_t y0, std::uint32_t size,
                  const Window& w, std::vector<CellCode>& out) {
    const std::uint64_t x1 = std::uint64_t{x0} + size - 1;
    const std::uint64_t y1 = std::uint64_t{y0} + size - 1;
    if (x1 < w.col0 || x0 > w.col1 || y1 < w.row0 || y0 > w.row1) return;
    if (w.col0 <= x0 && x1 <= w.col1 && w.row0 <= y0 && y1 <= w.row1) {
        out.push_back(node);
        return;
    }
    const std::uint32_t half = size / 2;
    for (unsigned q = 0; q < 4; ++q) {
        cover_window(node.child(q), x0 + (q >> 1) * half, y0 + (q & 1u) * half, half, w, out);
    }
}

std::vector<CellCode> cover(const Window& w, int level) {
    std::vector<CellCode> out;
    cover_window(CellCode::root(), 0, 0, std::uint32_t{1} << level, w, out);
    return out;
}

std::uint32_t index_floor(double v, std::uint32_t side) {
    if (!(v > 0.0)) return 0;
    if (v >= static_cast<double>(side)) return side - 1;
    return static_cast<std::uint32_t>(v);
}

// Level-l cells meeting the closed disc.
template <typename Fn>
void for_each_disc_cell(Coordinate center, double radius, const Ghsi& ghsi, Fn&& fn) {
    const int level = ghsi.level();
    const auto& ext = ghsi.extent();
    const auto& b = ext.bounds;
    const double w = ext.cell_width(level);
    const double h = ext.cell_height(level);
    const std::uint32_t side = ghsi.side();
    const std::uint32_t c0 = index_floor(std::floor((center.x - radius - b.min_x) / w) - 1, side);
    const std::uint32_t c1 = index_floor(std::floor((center.x + radius - b.min_x) / w) + 1, side);
    const std::uint32_t r0 = index_floor(std::floor((center.y - radius - b.min_y) / h) - 1, side);
    const std::uint32_t r1 = index_floor(std::floor((center.y + radius - b.min_y) / h) + 1, side);
    for (std::uint32_t col = c0; col <= c1; ++col) {
        for (std::uint32_t row = r0; row <= r1; ++row) {
            const CellCode code = encode(col, row, level);
            if (cell_bounds(code, ext).distance_to(center) <= radius) fn(code, CellIndex{col, row, level});
        }
    }
}

double center_offset(const Geometry& q, Coordinate center) {
    double r = 0.0;
    for (const auto& part : q.parts()) {
        for (const auto& c : part) r = std::max(r, distance(center, c));
    }
    return r;
}

bool neighbor_less(const Neighbor& a, const Neighbor& b) {
    return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
}

}  // namespace

const char* to_string(HitTag tag) { return tag == HitTag::TrueHit ? "TrueHit" : "Uncertain"; }

const char* to_string(QueryType type) {
    switch (type) {
        case QueryType::Range:
            return "range";
        case QueryType::Distance:
            return "dist";
        case QueryType::Knn:
            return "knn";
    }
    return "range";
}

void QueryStats::merge(const QueryStats& o) {
    query_cells += o.query_cells;
    candidates += o.candidates;
    true_hits += o.true_hits;
    false_hits += o.false_hits;
    refined += o.refined;
    refined_accepted += o.refined_accepted;
    results += o.results;
    refine_query_segments += o.refine_query_segments;
    refine_object_segments += o.refine_object_segments;
    distance_calls += o.distance_calls;
    step3_cells += o.step3_cells;
    descent.descents += o.descent.descents;
    descent.nodes_visited += o.descent.nodes_visited;
    descent.worst_excess = std::max(descent.worst_excess, o.descent.worst_excess);
    filter_micros += o.filter_micros;
    refine_micros += o.refine_micros;
}

// ---------------------------------------------------------------------------
// GHSI

Ghsi Ghsi::build(std::span<const SpatialObject> objects, int level, const GridExtent& extent) {
    if (level < 1 || level > CellCode::kMaxLevel) throw std::invalid_argument("GHSI level must lie in [1, 30]");
    Ghsi g(level, extent);
    for (const auto& obj : objects) {
        ++g.objects_read_;
        const Coordinate c =
            obj.geometry.is_point() ? obj.geometry.first_coordinate() : obj.geometry.envelope().center();
        ++g.counts_[g.cell_of(c).bits()];
        ++g.total_;
    }
    return g;
}

std::uint32_t Ghsi::count(const CellCode& c) const {
    if (c.level() != level_) return 0;
    auto it = counts_.find(c.bits());
    return it == counts_.end() ? 0 : it->second;
}

std::uint64_t Ghsi::count_in(std::uint32_t col0, std::uint32_t col1, std::uint32_t row0,
                             std::uint32_t row1) const {
    if (col0 > col1 || row0 > row1) return 0;
    const std::uint64_t area = (std::uint64_t{col1} - col0 + 1) * (std::uint64_t{row1} - row0 + 1);
    std::uint64_t sum = 0;
    if (area <= counts_.size()) {
        for (std::uint32_t c = col0; c <= col1; ++c) {
            for (std::uint32_t r = row0; r <= row1; ++r) {
                auto it = counts_.find(encode(c, r, level_).bits());
                if (it != counts_.end()) sum += it->second;
            }
        }
        return sum;
    }
    const Window w{col0, col1, row0, row1};
    for (const auto& [bits, n] : counts_) {
        if (w.contains(decode(CellCode(level_, bits)))) sum += n;
    }
    return sum;
}

std::uint64_t ghsi_analytic_bytes(int level) {
    if (level < 0 || level > CellCode::kMaxLevel) throw std::invalid_argument("GHSI level must lie in [0, 30]");
    return (std::uint64_t{1} << (2 * level)) * 12;
}

std::uint64_t Ghsi::analytic_bytes() const { return ghsi_analytic_bytes(level_); }

std::vector<CellCode> extend_query_cells(const Ghsi& ghsi, std::span<const CellCode> current) {
    std::unordered_set<std::uint64_t> keys;
    for (const auto& c : current) {
        if (c.level() != ghsi.level()) throw std::invalid_argument("query cell is not at the GHSI level");
        keys.insert(c.key());
        for (const auto& n : neighbors(c)) keys.insert(n.key());
    }
    std::vector<CellCode> out;
    out.reserve(keys.size());
    for (auto k : keys) out.push_back(CellCode::from_key(k));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CellCode> unviewed_cells(Coordinate center, double radius,
                                     std::span<const CellCode> viewed, const Ghsi& ghsi) {
    if (!std::isfinite(radius)) throw std::invalid_argument("d_k must be finite");
    std::unordered_set<std::uint64_t> seen;
    for (const auto& c : viewed) seen.insert(c.key());
    std::vector<CellCode> out;
    if (radius < 0.0) return out;
    for_each_disc_cell(center, radius, ghsi, [&](const CellCode& code, const CellIndex&) {
        if (!seen.contains(code.key())) out.push_back(code);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CellCode> unviewed_cells(const Geometry& q, double d_k,
                                     std::span<const CellCode> viewed, const Ghsi& ghsi) {
    const Coordinate center = q.envelope().center();
    return unviewed_cells(center, d_k + center_offset(q, center), viewed, ghsi);
}

// ---------------------------------------------------------------------------
// Range refinement

RangeContext prepare_range(const Geometry& q, Predicate theta, const GPTree& tree,
                           std::optional<int> envelope_depth) {
    auto dec = decompose_with_segments(q, query_config(tree, envelope_depth), tree.extent());
    RangeContext ctx;
    ctx.query = &q;
    ctx.predicate = theta;
    ctx.segments = std::move(dec.segments);
    ctx.cells.reserve(dec.cells.size());
    for (std::size_t i = 0; i < dec.cells.size(); ++i) {
        QueryCell qc;
        qc.cell = dec.cells[i];
        qc.certain = dec.cells[i].interior;
        qc.touches = true;
        qc.segments = std::move(dec.cell_segments[i]);
        ctx.cells.push_back(std::move(qc));
    }
    return ctx;
}

ClippedPair clip_candidate(const CandidateMatch& cand, const RangeContext& ctx, const Geometry& object,
                           const GridExtent& extent) {
    Envelope hull;
    for (const auto& c : cand.overlapping_cells) hull.expand(cell_bounds(c.cell, extent));
    const Envelope grown = hull.buffered(kTolerance);

    std::vector<std::uint32_t> qidx;
    for (std::uint32_t j : cand.query_cells) {
        for (std::uint32_t s : ctx.cells.at(j).segments) {
            if (grown.intersects(ctx.segments[s].envelope())) qidx.push_back(s);
        }
    }
    std::sort(qidx.begin(), qidx.end());
    qidx.erase(std::unique(qidx.begin(), qidx.end()), qidx.end());
    ClippedPair out;
    out.query.reserve(qidx.size());
    for (auto i : qidx) out.query.push_back(ctx.segments[i]);

    for (const auto& part : object.parts()) {
        for (std::size_t i = 0; i + 1 < part.size(); ++i) {
            const Segment s{part[i], part[i + 1]};
            if (grown.intersects(s.envelope())) out.object.push_back(s);
        }
    }
    return out;
}

bool refine_candidate(const CandidateMatch& cand, const RangeContext& ctx, const LookupTable& table,
                      const GridExtent& extent, QueryStats* stats) {
    const Geometry& q = *ctx.query;
    const Geometry& s = table.at(cand.id).geometry;
    if (ctx.predicate == Predicate::Contains) return exact_predicate(q, s, Predicate::Contains);
    if (q.is_point() || s.is_point()) return exact_predicate(q, s, Predicate::Intersects);

    const ClippedPair clipped = clip_candidate(cand, ctx, s, extent);
    if (stats) {
        stats->refine_query_segments += clipped.query.size();
        stats->refine_object_segments += clipped.object.size();
    }
    if (sweep_line_intersects(clipped.query, clipped.object)) return true;

    // Every common point lies in an overlapping cell, so the boundaries are
    // disjoint and one vertex of a side decides containment in the other.
    const Coordinate s_vertex = s.parts().front().front();
    if (q.is_polygon() && locate_in_polygon(s_vertex, q) != Location::Exterior) return true;
    const Coordinate q_vertex = q.parts().front().front();
    return s.is_polygon() && locate_in_polygon(q_vertex, s) != Location::Exterior;
}

// ---------------------------------------------------------------------------
// Engine

QueryEngine::QueryEngine(const GPTree& tree, const LookupTable& table, const Ghsi* ghsi,
                         QueryOptions options)
    : tree_(tree), table_(table), ghsi_(ghsi), options_(options) {}

std::vector<CandidateMatch> QueryEngine::filter(std::span<const QueryCell> cells, bool allow_true_hit,
                                                QueryStats* stats) const {
    SlotMap index;
    std::vector<CandidateMatch> out;
    DescentTrace* trace = stats ? &stats->descent : nullptr;
    const bool literal = options_.true_hit_rule == TrueHitRule::Literal;
    for (std::uint32_t j = 0; j < cells.size(); ++j) {
        const QueryCell& qc = cells[j];
        const CellCode& qcode = qc.cell.cell;
        tree_.search(
            qcode,
            [&](const IndexNode& node, bool covers_query) {
                if (!node.has_items()) return;
                // node ⊇ Q when covers_query, node ⊆ Q otherwise or when equal
                const bool node_within = !covers_query || node.level() == qcode.level();
                const CellCode& overlap = node_within ? node.code : qcode;
                auto add = [&](ObjectId id, bool interior, bool hit) {
                    auto [slot, inserted] = index.try_emplace(id, static_cast<std::uint32_t>(out.size()));
                    if (inserted) out.push_back({id, HitTag::Uncertain, 0, {}, {}});
                    auto& m = out[slot];
                    ++m.overlap_count;
                    if (m.tag == HitTag::TrueHit) return;
                    if (hit && allow_true_hit) {
                        m.tag = HitTag::TrueHit;
                        m.overlapping_cells = {};
                        m.query_cells = {};
                        return;
                    }
                    m.overlapping_cells.push_back({overlap, interior});
                    m.query_cells.push_back(j);
                };
                const NodeLists& lists = *node.lists;
                const bool il_hit = literal ? true
                                            : (covers_query && qc.touches) || (node_within && qc.certain);
                const bool bl_hit = literal ? qc.cell.interior : node_within && qc.certain;
                const bool ul_hit = literal && qc.cell.interior;
                for (ObjectId id : lists.interior) add(id, true, il_hit);
                for (ObjectId id : lists.boundary) add(id, false, bl_hit);
                for (ObjectId id : lists.uncertain) add(id, false, ul_hit);
            },
            trace);
    }
    if (stats) {
        stats->query_cells += cells.size();
        stats->candidates += out.size();
        for (const auto& m : out) stats->true_hits += m.tag == HitTag::TrueHit ? 1 : 0;
    }
    return out;
}

std::vector<ObjectId> QueryEngine::range(const Geometry& q, Predicate theta, QueryStats* stats,
                                         std::vector<CandidateMatch>* candidates) const {
    const auto t0 = Clock::now();
    const RangeContext ctx = prepare_range(q, theta, tree_, options_.query_envelope_depth);
    auto cands = filter(ctx.cells, theta == Predicate::Intersects, stats);
    const auto t1 = Clock::now();

    std::vector<ObjectId> out;
    const Envelope qenv = q.envelope().buffered(kTolerance);
    for (const auto& c : cands) {
        if (c.tag == HitTag::TrueHit) {
            out.push_back(c.id);
            continue;
        }
        const Envelope& senv = table_.at(c.id).geometry.envelope();
        const bool possible = theta == Predicate::Contains ? qenv.contains(senv) : qenv.intersects(senv);
        if (!possible) {
            if (stats) ++stats->false_hits;
            continue;
        }
        if (stats) ++stats->refined;
        if (refine_candidate(c, ctx, table_, tree_.extent(), stats)) {
            if (stats) ++stats->refined_accepted;
            out.push_back(c.id);
        }
    }
    std::sort(out.begin(), out.end());
    if (stats) {
        stats->results += out.size();
        stats->filter_micros += std::chrono::duration<double, std::micro>(t1 - t0).count();
        stats->refine_micros += micros_since(t1);
    }
    if (candidates) *candidates = std::move(cands);
    return out;
}

std::vector<ObjectId> QueryEngine::within_distance(const Geometry& q, double eps, QueryStats* stats,
                                                   std::vector<CandidateMatch>* candidates) const {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    const auto t0 = Clock::now();
    const auto& ext = tree_.extent();
    const auto base = decompose(q, query_config(tree_, options_.query_envelope_depth), ext);
    auto cells = extend_cells(base, eps, ext);
    const auto converted = convert_cells(base, eps, ext);
    cells.insert(cells.end(), converted.begin(), converted.end());
    cells = merge_cells(std::move(cells));
    std::vector<QueryCell> qcells;
    qcells.reserve(cells.size());
    for (const auto& c : cells) qcells.push_back({c, c.interior, c.interior, {}});
    auto cands = filter(qcells, true, stats);
    const auto t1 = Clock::now();

    std::vector<ObjectId> out;
    for (const auto& c : cands) {
        if (c.tag == HitTag::TrueHit) {
            out.push_back(c.id);
            continue;
        }
        const Geometry& s = table_.at(c.id).geometry;
        if (s.envelope().distance_to(q.envelope()) > eps) {
            if (stats) ++stats->false_hits;
            continue;
        }
        if (stats) {
            ++stats->refined;
            ++stats->distance_calls;
        }
        if (distance(q, s) <= eps) {
            if (stats) ++stats->refined_accepted;
            out.push_back(c.id);
        }
    }
    std::sort(out.begin(), out.end());
    if (stats) {
        stats->results += out.size();
        stats->filter_micros += std::chrono::duration<double, std::micro>(t1 - t0).count();
        stats->refine_micros += micros_since(t1);
    }
    if (candidates) *candidates = std::move(cands);
    return out;
}

void QueryEngine::collect_ids(std::span<const CellCode> cells, std::vector<ObjectId>& fresh,
                              std::unordered_map<ObjectId, bool>& seen, QueryStats* stats) const {
    DescentTrace* trace = stats ? &stats->descent : nullptr;
    for (const auto& cell : cells) {
        tree_.search(
            cell,
            [&](const IndexNode& node, bool) {
                if (!node.has_items()) return;
                for (const auto* list : {&node.lists->interior, &node.lists->boundary, &node.lists->uncertain}) {
                    for (ObjectId id : *list) {
                        if (seen.try_emplace(id, true).second) fresh.push_back(id);
                    }
                }
            },
            trace);
    }
    if (stats) stats->query_cells += cells.size();
}

std::vector<Neighbor> QueryEngine::knn(const Geometry& q, std::size_t k, QueryStats* stats) const {
    if (k == 0) throw std::invalid_argument("k must be positive");
    if (!ghsi_) throw std::logic_error("kNN queries need a GHSI");
    if (table_.empty()) return {};
    const auto& ext = ghsi_->extent();
    if (!ext.bounds.contains(q.envelope())) throw DataError("query lies outside the grid extent");

    const std::size_t kk = std::min(k, table_.size());
    const Coordinate center = q.envelope().center();
    const double offset = center_offset(q, center);
    const int level = ghsi_->level();
    const std::uint32_t last = ghsi_->side() - 1;

    double filter_us = 0.0;
    double refine_us = 0.0;
    std::unordered_map<ObjectId, bool> seen;
    std::vector<Neighbor> results;
    std::vector<ObjectId> fresh;
    auto process = [&](std::span<const CellCode> cells) {
        auto t0 = Clock::now();
        fresh.clear();
        collect_ids(cells, fresh, seen, stats);
        auto t1 = Clock::now();
        for (ObjectId id : fresh) results.push_back({id, distance(q, table_.at(id).geometry)});
        if (stats) stats->distance_calls += fresh.size();
        filter_us += std::chrono::duration<double, std::micro>(t1 - t0).count();
        refine_us += micros_since(t1);
    };

    // Step 1: level-l window around q, widened one ring at a time until it holds k objects
    const auto lo = decode(ghsi_->cell_of({q.envelope().min_x, q.envelope().min_y}));
    const auto hi = decode(ghsi_->cell_of({q.envelope().max_x, q.envelope().max_y}));
    Window win{lo.col, hi.col, lo.row, hi.row};
    auto full = [&] { return win.col0 == 0 && win.row0 == 0 && win.col1 == last && win.row1 == last; };
    auto grow = [&] {
        win.col0 = win.col0 > 0 ? win.col0 - 1 : 0;
        win.row0 = win.row0 > 0 ? win.row0 - 1 : 0;
        win.col1 = std::min(win.col1 + 1, last);
        win.row1 = std::min(win.row1 + 1, last);
    };
    while (ghsi_->count_in(win.col0, win.col1, win.row0, win.row1) < kk && !full()) grow();

    // Step 2: rough result from the window
    process(cover(win, level));
    while (results.size() < kk && !full()) {
        const Window old = win;
        grow();
        std::vector<Window> strips;
        if (old.row0 > win.row0) strips.push_back({win.col0, win.col1, win.row0, old.row0 - 1});
        if (win.row1 > old.row1) strips.push_back({win.col0, win.col1, old.row1 + 1, win.row1});
        if (old.col0 > win.col0) strips.push_back({win.col0, old.col0 - 1, old.row0, old.row1});
        if (win.col1 > old.col1) strips.push_back({old.col1 + 1, win.col1, old.row0, old.row1});
        std::vector<CellCode> ring;
        for (const auto& strip : strips) {
            auto part = cover(strip, level);
            ring.insert(ring.end(), part.begin(), part.end());
        }
        process(ring);
    }
    auto rank = [&] {
        const std::size_t n = std::min(kk, results.size());
        std::partial_sort(results.begin(), results.begin() + static_cast<std::ptrdiff_t>(n), results.end(),
                          neighbor_less);
        return n == kk ? results[kk - 1].distance : std::numeric_limits<double>::infinity();
    };
    double d_k = rank();

    const Envelope lo_rect = cell_bounds(encode(win.col0, win.row0, level), ext);
    const Envelope hi_rect = cell_bounds(encode(win.col1, win.row1, level), ext);
    double d_m = std::numeric_limits<double>::infinity();
    if (win.col0 > 0) d_m = std::min(d_m, center.x - lo_rect.min_x);
    if (win.row0 > 0) d_m = std::min(d_m, center.y - lo_rect.min_y);
    if (win.col1 < last) d_m = std::min(d_m, hi_rect.max_x - center.x);
    if (win.row1 < last) d_m = std::min(d_m, hi_rect.max_y - center.y);

    // Step 3: cells meeting the d_k disc that the window did not cover
    if (!(d_k + offset < d_m)) {
        std::unordered_set<std::uint64_t> viewed;
        for (;;) {
            const double radius = (d_k + offset) * (1.0 + 1e-9) + kTolerance;
            std::vector<CellCode> pending;
            for_each_disc_cell(center, radius, *ghsi_, [&](const CellCode& code, const CellIndex& idx) {
                if (win.contains(idx) || viewed.contains(code.key())) return;
                viewed.insert(code.key());
                pending.push_back(code);
            });
            if (pending.empty()) break;
            if (stats) stats->step3_cells += pending.size();
            process(pending);
            d_k = rank();
        }
    }

    rank();
    results.resize(std::min(kk, results.size()));
    if (stats) {
        stats->candidates += seen.size();
        stats->refined += seen.size();
        stats->results += results.size();
        stats->filter_micros += filter_us;
        stats->refine_micros += refine_us;
    }
    return results;
}

std::vector<ObjectId> range_query(const GPTree& tree, const LookupTable& table, const Geometry& q,
                                  Predicate theta) {
    return QueryEngine(tree, table).range(q, theta);
}

std::vector<ObjectId> eps_distance_query(const GPTree& tree, const LookupTable& table,
                                         const Geometry& q, double eps) {
    return QueryEngine(tree, table).within_distance(q, eps);
}

std::vector<Neighbor> knn_query(const GPTree& tree, const LookupTable& table, const Ghsi& ghsi,
                                const Geometry& q, std::size_t k) {
    return QueryEngine(tree, table, &ghsi).knn(q, k);
}

std::string to_json_line(const QueryRecord& r) {
    nlohmann::ordered_json j;
    j["engine"] = r.engine;
    j["queryId"] = r.query_id;
    j["type"] = to_string(r.type);
    j["elapsedMicros"] = r.elapsed_micros;
    j["resultIds"] = r.result_ids;
    if (r.type == QueryType::Knn) j["distances"] = r.distances;
    if (!r.candidates.empty()) {
        auto& arr = j["candidates"] = nlohmann::ordered_json::array();
        for (const auto& c : r.candidates) {
            arr.push_back({{"sId", c.id}, {"hitTag", to_string(c.tag)},
                           {"overlapCellCount", c.overlap_count}});
        }
    }
    return j.dump();
}

}  // namespace gptree
