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
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gptree/geometry.hpp"
#include "gptree/grid.hpp"
#include "gptree/tree.hpp"

namespace gptree {

enum class HitTag : std::uint8_t { TrueHit, Uncertain };
const char* to_string(HitTag tag);

/// A query cell as seen by the filter.
struct QueryCell {
    GridCell cell;
    /// The query region covers the cell.
    bool certain = false;
    /// The query geometry reaches the closed cell.
    bool touches = true;
    /// Indices of query segments touching the closed cell (boundary cells only).
    std::vector<std::uint32_t> segments;
};

/// One candidate object. overlapping_cells[i] is the overlap of the object
/// cell with query cell query_cells[i], i.e. the smaller of the two cells.
/// The cell lists are kept for uncertain candidates only; overlap_count
/// counts every overlapping pair either way.
struct CandidateMatch {
    ObjectId id = 0;
    HitTag tag = HitTag::Uncertain;
    std::uint32_t overlap_count = 0;
    std::vector<GridCell> overlapping_cells;
    std::vector<std::uint32_t> query_cells;
};

/// Sound: the ancestor-or-equal cell of an overlapping pair must be an interior
/// cell of its owner, and the other party must provably reach it. Literal: any
/// interior cell in the pair suffices. The literal rule is unsound and exists
/// for harness checks only.
enum class TrueHitRule : std::uint8_t { Sound, Literal };

struct QueryOptions {
    TrueHitRule true_hit_rule = TrueHitRule::Sound;
    /// Envelope depth used to decompose query geometries; the tree's own
    /// setting when empty. Finer query cells turn more candidates into true hits.
    std::optional<int> query_envelope_depth = 4;
};

/// Per-query counters. n_c = candidates, n_t = true_hits, n_f = false_hits
/// (rejected by the envelope check), n_u = refined (sent to exact refinement);
/// n_t + n_f + n_u = n_c.
struct QueryStats {
    std::uint64_t query_cells = 0;
    std::uint64_t candidates = 0;
    std::uint64_t true_hits = 0;
    std::uint64_t false_hits = 0;
    std::uint64_t refined = 0;
    std::uint64_t refined_accepted = 0;
    std::uint64_t results = 0;
    std::uint64_t refine_query_segments = 0;
    std::uint64_t refine_object_segments = 0;
    std::uint64_t distance_calls = 0;
    /// kNN: level-l cells queried in the disc refinement loop.
    std::uint64_t step3_cells = 0;
    DescentTrace descent;
    double filter_micros = 0.0;
    double refine_micros = 0.0;

    void merge(const QueryStats& other);
};

/// Grid histogram: per level-l cell, the number of objects whose envelope
/// center falls into it.
class Ghsi {
  public:
    /// Throws std::invalid_argument unless 1 <= level <= 30.
    static Ghsi build(std::span<const SpatialObject> objects, int level, const GridExtent& extent);

    int level() const { return level_; }
    const GridExtent& extent() const { return extent_; }
    std::uint32_t side() const { return std::uint32_t{1} << level_; }

    std::uint32_t count(const CellCode& c) const;
    std::uint64_t total() const { return total_; }
    std::size_t occupied_cells() const { return counts_.size(); }
    /// Objects read while building; equals the dataset size.
    std::uint64_t objects_read() const { return objects_read_; }

    /// Sum of counts over the inclusive column/row window.
    std::uint64_t count_in(std::uint32_t col0, std::uint32_t col1, std::uint32_t row0,
                           std::uint32_t row1) const;

    /// 4^level × 12 bytes.
    std::uint64_t analytic_bytes() const;

    CellCode cell_of(Coordinate p) const { return cell_containing(p, level_, extent_); }

  private:
    Ghsi(int level, const GridExtent& extent) : level_(level), extent_(extent) {}

    int level_;
    GridExtent extent_;
    std::unordered_map<std::uint64_t, std::uint32_t> counts_;  // cell bits -> count
    std::uint64_t total_ = 0;
    std::uint64_t objects_read_ = 0;
};

std::uint64_t ghsi_analytic_bytes(int level);

/// `current` plus one ring of same-level neighbours, clipped at the extent. Sorted.
std::vector<CellCode> extend_query_cells(const Ghsi& ghsi, std::span<const CellCode> current);

/// Level-l cells whose rectangle meets the closed disc (center, radius), minus `viewed`. Sorted.
std::vector<CellCode> unviewed_cells(Coordinate center, double radius,
                                     std::span<const CellCode> viewed, const Ghsi& ghsi);

/// Disc anchored at the envelope center of q, radius d_k widened by the largest
/// center-to-vertex offset of q (zero for points).
std::vector<CellCode> unviewed_cells(const Geometry& q, double d_k,
                                     std::span<const CellCode> viewed, const Ghsi& ghsi);

struct Neighbor {
    ObjectId id = 0;
    double distance = 0.0;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Query state for one range query: the decomposed query and its segments.
struct RangeContext {
    const Geometry* query = nullptr;
    Predicate predicate = Predicate::Intersects;
    std::vector<Segment> segments;
    std::vector<QueryCell> cells;
};

RangeContext prepare_range(const Geometry& q, Predicate theta, const GPTree& tree,
                           std::optional<int> envelope_depth = std::nullopt);

/// Query and object segments handed to the sweep for one candidate: those
/// whose bounding box meets the hull of the overlapping cells.
struct ClippedPair {
    std::vector<Segment> query;
    std::vector<Segment> object;
};
ClippedPair clip_candidate(const CandidateMatch& cand, const RangeContext& ctx,
                           const Geometry& object, const GridExtent& extent);

/// Exact verdict for an uncertain candidate. Intersects is decided on the
/// overlapping cells only; Contains falls back to the full predicate.
/// Throws std::out_of_range for an id missing from the table.
bool refine_candidate(const CandidateMatch& cand, const RangeContext& ctx, const LookupTable& table,
                      const GridExtent& extent, QueryStats* stats = nullptr);

/// Read-only query front end over a finished tree. Safe for concurrent use.
class QueryEngine {
  public:
    QueryEngine(const GPTree& tree, const LookupTable& table, const Ghsi* ghsi = nullptr,
                QueryOptions options = {});

    /// Ids of objects s with exact_predicate(q, s, theta), ascending.
    std::vector<ObjectId> range(const Geometry& q, Predicate theta, QueryStats* stats = nullptr,
                                std::vector<CandidateMatch>* candidates = nullptr) const;

    /// Ids of objects within distance eps of q, ascending. Throws
    /// std::invalid_argument if eps <= 0.
    std::vector<ObjectId> within_distance(const Geometry& q, double eps, QueryStats* stats = nullptr,
                                          std::vector<CandidateMatch>* candidates = nullptr) const;

    /// min(k, n) nearest objects ordered by (distance, id). Needs a GHSI.
    std::vector<Neighbor> knn(const Geometry& q, std::size_t k, QueryStats* stats = nullptr) const;

    /// Prefix-search filter over the query cells, one match per object.
    std::vector<CandidateMatch> filter(std::span<const QueryCell> cells, bool allow_true_hit,
                                       QueryStats* stats = nullptr) const;

    const GPTree& tree() const { return tree_; }
    const LookupTable& table() const { return table_; }
    const Ghsi* ghsi() const { return ghsi_; }

  private:
    void collect_ids(std::span<const CellCode> cells, std::vector<ObjectId>& fresh,
                     std::unordered_map<ObjectId, bool>& seen, QueryStats* stats) const;

    const GPTree& tree_;
    const LookupTable& table_;
    const Ghsi* ghsi_;
    QueryOptions options_;
};

std::vector<ObjectId> range_query(const GPTree& tree, const LookupTable& table, const Geometry& q,
                                  Predicate theta);
std::vector<ObjectId> eps_distance_query(const GPTree& tree, const LookupTable& table,
                                         const Geometry& q, double eps);
std::vector<Neighbor> knn_query(const GPTree& tree, const LookupTable& table, const Ghsi& ghsi,
                                const Geometry& q, std::size_t k);

enum class QueryType : std::uint8_t { Range, Distance, Knn };
const char* to_string(QueryType type);

/// One line of query output.
struct QueryRecord {
    std::string engine;
    std::uint64_t query_id = 0;
    QueryType type = QueryType::Range;
    double elapsed_micros = 0.0;
    std::vector<ObjectId> result_ids;
    /// kNN only, parallel to result_ids.
    std::vector<double> distances;
    std::vector<CandidateMatch> candidates;
};

/// {"engine":..,"queryId":..,"type":..,"elapsedMicros":..,"resultIds":[..]} plus
/// "distances" for kNN and per-candidate {sId, hitTag, overlapCellCount} when present.
std::string to_json_line(const QueryRecord& record);

}  // namespace gptree
