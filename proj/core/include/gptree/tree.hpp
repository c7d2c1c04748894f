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
#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gptree/cell_code.hpp"
#include "gptree/geometry.hpp"
#include "gptree/grid.hpp"

namespace gptree {

/// Object ids attached to one node. Lists are kept sorted and duplicate free.
struct NodeLists {
    std::vector<ObjectId> interior;   // IL
    std::vector<ObjectId> boundary;   // BL
    std::vector<ObjectId> uncertain;  // UL, inherited from ancestor boundary lists

    bool empty() const { return interior.empty() && boundary.empty() && uncertain.empty(); }
    std::size_t size() const { return interior.size() + boundary.size() + uncertain.size(); }
};

/// Prefix-tree node. Each level consumes one quadrant (2 code bits). The lists
/// are allocated on the first insertion so that empty nodes carry only their
/// child slots.
struct IndexNode {
    explicit IndexNode(const CellCode& c) : code(c) {}

    CellCode code;
    std::array<std::unique_ptr<IndexNode>, 4> children;
    std::unique_ptr<NodeLists> lists;

    int level() const { return code.level(); }
    bool is_leaf() const {
        return !children[0] && !children[1] && !children[2] && !children[3];
    }
    bool has_items() const { return lists && !lists->empty(); }
    std::size_t child_count() const;

    IndexNode& ensure_child(unsigned quadrant);
    NodeLists& ensure_lists();
};

struct LookupEntry {
    Geometry geometry;
    std::vector<GridCell> cells;
};

/// Object id -> geometry and its decomposition.
class LookupTable {
  public:
    void insert(ObjectId id, LookupEntry entry);
    /// Throws std::out_of_range for an unknown id.
    const LookupEntry& at(ObjectId id) const;
    const LookupEntry* find(ObjectId id) const;
    bool contains(ObjectId id) const { return entries_.contains(id); }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    /// 8 B key + 16 B per coordinate + 9 B per cell, summed over entries.
    std::uint64_t memory_bytes() const;

  private:
    std::unordered_map<ObjectId, LookupEntry> entries_;
};

struct TreeStats {
    int height = 0;
    std::uint64_t node_count = 0;
    std::uint64_t leaf_count = 0;
    std::uint64_t il_entries = 0;
    std::uint64_t bl_entries = 0;
    std::uint64_t ul_entries = 0;
    std::uint64_t tree_bytes = 0;
    std::uint64_t lookup_bytes = 0;
    /// tree_bytes + lookup_bytes
    std::uint64_t memory_bytes = 0;

    friend bool operator==(const TreeStats&, const TreeStats&) = default;
};

/// Tracks how many nodes a single prefix descent touched before fanning out.
struct DescentTrace {
    std::uint64_t descents = 0;
    std::uint64_t nodes_visited = 0;
    /// max over descents of (nodes visited during descent) - (query level + 1)
    std::int64_t worst_excess = std::numeric_limits<std::int64_t>::min();

    void record(std::uint64_t visited, int query_level) {
        ++descents;
        nodes_visited += visited;
        worst_excess = std::max(worst_excess, static_cast<std::int64_t>(visited) - (query_level + 1));
    }
};

class GPTree;

/// Pushes every list of an internal node into all four children (creating the
/// missing ones): IL into the child IL, BL and UL into the child UL. Afterwards
/// only leaves hold ids.
void node_optimization(IndexNode& root);

/// Replaces the root's empty upper layers by at most four sub-roots, each
/// carrying its full code prefix.
void prune(GPTree& tree);

TreeStats stats(const GPTree& tree, const LookupTable* table = nullptr);

class GPTree {
  public:
    GPTree(const DecompositionConfig& cfg, const GridExtent& extent);

    /// Decomposes every object and inserts each cell by descending two bits per
    /// level. Throws DataError on duplicate ids or geometry outside the extent.
    static std::pair<GPTree, LookupTable> build(std::span<const SpatialObject> objects,
                                                const DecompositionConfig& cfg,
                                                const GridExtent& extent);

    /// Inserts one decomposed cell (the basic construction step).
    void insert(ObjectId id, const GridCell& cell);

    const DecompositionConfig& config() const { return config_; }
    const GridExtent& extent() const { return extent_; }

    IndexNode& root() { return *root_; }
    const IndexNode& root() const { return *root_; }

    bool optimized() const { return optimized_; }
    bool pruned() const { return pruned_; }

    /// Search entry points: the root, or the sub-roots once pruned.
    std::vector<const IndexNode*> entries() const;
    std::span<const std::unique_ptr<IndexNode>> sub_roots() const { return sub_roots_; }

    /// Prefix search for one query cell. `visit(node, covers_query)` is called for
    /// every node on the descent path (covers_query = node is the cell or an
    /// ancestor) and, once the code is used up, for every descendant
    /// (covers_query = false). No geometry is touched.
    template <typename Visit>
    void search(const CellCode& query, Visit&& visit, DescentTrace* trace = nullptr) const;

  private:
    friend void node_optimization_on(GPTree& tree);
    friend void prune(GPTree& tree);
    friend class SnapshotAccess;

    template <typename Visit>
    static void fan_out(const IndexNode& start, bool include_start, Visit& visit);

    DecompositionConfig config_;
    GridExtent extent_;
    std::unique_ptr<IndexNode> root_;
    std::vector<std::unique_ptr<IndexNode>> sub_roots_;
    bool optimized_ = false;
    bool pruned_ = false;
};

/// node_optimization on the tree's root; marks the tree optimized.
void node_optimization_on(GPTree& tree);

template <typename Visit>
void GPTree::fan_out(const IndexNode& start, bool include_start, Visit& visit) {
    if (include_start) visit(start, false);
    for (const auto& c : start.children) {
        if (c) fan_out(*c, true, visit);
    }
}

template <typename Visit>
void GPTree::search(const CellCode& query, Visit&& visit, DescentTrace* trace) const {
    auto run = [&](const IndexNode& entry) {
        if (is_ancestor(entry.code, query)) {
            const IndexNode* node = &entry;
            std::uint64_t visited = 1;
            visit(*node, true);
            while (node->level() < query.level()) {
                const IndexNode* next = node->children[query.quadrant_at(node->level())].get();
                if (!next) break;
                node = next;
                ++visited;
                visit(*node, true);
            }
            if (trace) trace->record(visited, query.level());
            if (node->level() == query.level()) fan_out(*node, false, visit);
        } else if (is_ancestor(query, entry.code)) {
            fan_out(entry, true, visit);
        }
    };
    if (!pruned_) {
        run(*root_);
        return;
    }
    for (const auto& sub : sub_roots_) run(*sub);
}

}  // namespace gptree
