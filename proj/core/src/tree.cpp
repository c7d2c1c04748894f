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

#include "gptree/tree.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "gptree/error.hpp"

namespace gptree {

namespace {

constexpr std::uint64_t kNodeBytes = 4 * 8 + 3 * 16;
constexpr std::uint64_t kIdBytes = 8;

void append_unique(std::vector<ObjectId>& dst, const std::vector<ObjectId>& src) {
    if (src.empty()) return;
    std::vector<ObjectId> merged;
    merged.reserve(dst.size() + src.size());
    std::set_union(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(merged));
    dst = std::move(merged);
}

void sort_lists(IndexNode& root) {
    std::vector<IndexNode*> stack{&root};
    while (!stack.empty()) {
        IndexNode* node = stack.back();
        stack.pop_back();
        if (node->lists) {
            for (auto* list : {&node->lists->interior, &node->lists->boundary, &node->lists->uncertain}) {
                std::sort(list->begin(), list->end());
                list->erase(std::unique(list->begin(), list->end()), list->end());
            }
        }
        for (auto& c : node->children) {
            if (c) stack.push_back(c.get());
        }
    }
}

// Deep copy in pre-order so that a subtree, its lists and their ids sit close
// together in memory; fan-out then walks mostly sequential addresses.
std::unique_ptr<IndexNode> relaid(const IndexNode& node) {
    auto copy = std::make_unique<IndexNode>(node.code);
    if (node.has_items()) {
        copy->lists = std::make_unique<NodeLists>();
        copy->lists->interior.assign(node.lists->interior.begin(), node.lists->interior.end());
        copy->lists->boundary.assign(node.lists->boundary.begin(), node.lists->boundary.end());
        copy->lists->uncertain.assign(node.lists->uncertain.begin(), node.lists->uncertain.end());
    }
    for (unsigned q = 0; q < 4; ++q) {
        if (node.children[q]) copy->children[q] = relaid(*node.children[q]);
    }
    return copy;
}

void relayout(std::unique_ptr<IndexNode>& node) {
    auto fresh = relaid(*node);
    node = std::move(fresh);
}

struct Walk {
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
    std::uint64_t il = 0;
    std::uint64_t bl = 0;
    std::uint64_t ul = 0;
    int depth = 0;
};

// Depth is counted from `entry`, not from the level-0 cell.
void walk(const IndexNode& entry, Walk& w) {
    std::vector<std::pair<const IndexNode*, int>> stack{{&entry, 0}};
    while (!stack.empty()) {
        auto [node, depth] = stack.back();
        stack.pop_back();
        ++w.nodes;
        if (node->is_leaf()) {
            ++w.leaves;
            w.depth = std::max(w.depth, depth);
        }
        if (node->lists) {
            w.il += node->lists->interior.size();
            w.bl += node->lists->boundary.size();
            w.ul += node->lists->uncertain.size();
        }
        for (const auto& c : node->children) {
            if (c) stack.emplace_back(c.get(), depth + 1);
        }
    }
}

}  // namespace

std::size_t IndexNode::child_count() const {
    return static_cast<std::size_t>(std::count_if(children.begin(), children.end(),
                                                  [](const auto& c) { return c != nullptr; }));
}

IndexNode& IndexNode::ensure_child(unsigned quadrant) {
    auto& slot = children.at(quadrant);
    if (!slot) slot = std::make_unique<IndexNode>(code.child(quadrant));
    return *slot;
}

NodeLists& IndexNode::ensure_lists() {
    if (!lists) lists = std::make_unique<NodeLists>();
    return *lists;
}

void LookupTable::insert(ObjectId id, LookupEntry entry) {
    if (!entries_.emplace(id, std::move(entry)).second) {
        throw DataError("duplicate object id " + std::to_string(id));
    }
}

const LookupEntry& LookupTable::at(ObjectId id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) throw std::out_of_range("object id not in lookup table");
    return it->second;
}

const LookupEntry* LookupTable::find(ObjectId id) const {
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
}

std::uint64_t LookupTable::memory_bytes() const {
    std::uint64_t total = 0;
    for (const auto& [id, e] : entries_) {
        total += 8 + 16 * static_cast<std::uint64_t>(e.geometry.coordinate_count()) +
                 9 * static_cast<std::uint64_t>(e.cells.size());
    }
    return total;
}

GPTree::GPTree(const DecompositionConfig& cfg, const GridExtent& extent)
    : config_(cfg), extent_(extent), root_(std::make_unique<IndexNode>(CellCode::root())) {
    cfg.validate();
}

void GPTree::insert(ObjectId id, const GridCell& cell) {
    IndexNode* node = root_.get();
    for (int depth = 0; depth < cell.cell.level(); ++depth) {
        node = &node->ensure_child(cell.cell.quadrant_at(depth));
    }
    auto& lists = node->ensure_lists();
    (cell.interior ? lists.interior : lists.boundary).push_back(id);
}

std::pair<GPTree, LookupTable> GPTree::build(std::span<const SpatialObject> objects,
                                             const DecompositionConfig& cfg,
                                             const GridExtent& extent) {
    GPTree tree(cfg, extent);
    LookupTable table;
    for (const auto& obj : objects) {
        if (table.contains(obj.id)) throw DataError("duplicate object id " + std::to_string(obj.id));
        auto cells = decompose(obj.geometry, cfg, extent);
        for (const auto& c : cells) tree.insert(obj.id, c);
        table.insert(obj.id, {obj.geometry, std::move(cells)});
    }
    sort_lists(*tree.root_);
    relayout(tree.root_);
    return {std::move(tree), std::move(table)};
}

std::vector<const IndexNode*> GPTree::entries() const {
    if (!pruned_) return {root_.get()};
    std::vector<const IndexNode*> out;
    out.reserve(sub_roots_.size());
    for (const auto& s : sub_roots_) out.push_back(s.get());
    return out;
}

void node_optimization(IndexNode& root) {
    std::deque<IndexNode*> queue{&root};
    while (!queue.empty()) {
        IndexNode* node = queue.front();
        queue.pop_front();
        if (node->is_leaf()) continue;
        if (node->has_items()) {
            const NodeLists& parent = *node->lists;
            for (unsigned q = 0; q < 4; ++q) {
                NodeLists& child = node->ensure_child(q).ensure_lists();
                append_unique(child.interior, parent.interior);
                append_unique(child.uncertain, parent.boundary);
                append_unique(child.uncertain, parent.uncertain);
            }
        }
        node->lists.reset();
        for (auto& c : node->children) {
            if (c) queue.push_back(c.get());
        }
    }
}

void node_optimization_on(GPTree& tree) {
    if (tree.pruned_) throw std::logic_error("node optimization must precede pruning");
    node_optimization(*tree.root_);
    relayout(tree.root_);
    tree.optimized_ = true;
}

void prune(GPTree& tree) {
    if (tree.pruned_) return;
    IndexNode& root = *tree.root_;
    tree.pruned_ = true;
    if (root.is_leaf()) {
        // a root-only tree keeps itself as the single entry
        tree.sub_roots_.push_back(std::move(tree.root_));
        tree.root_ = std::make_unique<IndexNode>(CellCode::root());
        return;
    }
    std::deque<std::unique_ptr<IndexNode>> queue;
    for (auto& c : root.children) {
        if (c) queue.push_back(std::move(c));
    }
    if (root.has_items()) {
        // items left at the root are only reachable through it
        tree.pruned_ = false;
        for (auto& c : queue) root.children[c->code.quadrant_at(0)] = std::move(c);
        return;
    }
    root.lists.reset();
    std::vector<std::unique_ptr<IndexNode>> frozen;
    while (!queue.empty()) {
        auto node = std::move(queue.front());
        queue.pop_front();
        const std::size_t total = queue.size() + frozen.size() + 1;
        if (node->is_leaf() || node->has_items() || total + node->child_count() - 1 > 4) {
            frozen.push_back(std::move(node));
            continue;
        }
        for (auto& c : node->children) {
            if (c) queue.push_back(std::move(c));
        }
    }
    std::sort(frozen.begin(), frozen.end(),
              [](const auto& a, const auto& b) { return a->code.key() < b->code.key(); });
    tree.sub_roots_ = std::move(frozen);
}

TreeStats stats(const GPTree& tree, const LookupTable* table) {
    TreeStats s;
    Walk w;
    if (!tree.pruned()) {
        walk(tree.root(), w);
        s.height = w.depth;
    } else {
        ++w.nodes;  // the retained, now childless root
        int deepest = -1;
        for (const auto& sub : tree.sub_roots()) {
            Walk sw;
            walk(*sub, sw);
            w.nodes += sw.nodes;
            w.leaves += sw.leaves;
            w.il += sw.il;
            w.bl += sw.bl;
            w.ul += sw.ul;
            deepest = std::max(deepest, sw.depth);
        }
        const bool root_entry = tree.sub_roots().size() == 1 && tree.sub_roots()[0]->level() == 0;
        if (root_entry) {
            // the root itself is the sole entry: no extra node, no extra hop
            --w.nodes;
            s.height = deepest;
        } else {
            s.height = deepest < 0 ? 0 : deepest + 1;
        }
        if (tree.sub_roots().empty()) w.leaves = 1;
    }
    s.node_count = w.nodes;
    s.leaf_count = w.leaves;
    s.il_entries = w.il;
    s.bl_entries = w.bl;
    s.ul_entries = w.ul;
    s.tree_bytes = w.nodes * kNodeBytes + (w.il + w.bl + w.ul) * kIdBytes;
    s.lookup_bytes = table ? table->memory_bytes() : 0;
    s.memory_bytes = s.tree_bytes + s.lookup_bytes;
    return s;
}

}  // namespace gptree
