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

#include "gptree/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

#include "gptree/error.hpp"

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

namespace gptree {

class SnapshotAccess {
  public:
    static void restore(GPTree& tree, std::unique_ptr<IndexNode> root,
                        std::vector<std::unique_ptr<IndexNode>> subs, bool optimized, bool pruned) {
        tree.root_ = std::move(root);
        tree.sub_roots_ = std::move(subs);
        tree.optimized_ = optimized;
        tree.pruned_ = pruned;
    }
};

namespace {

constexpr std::array<char, 4> kMagic{'G', 'P', 'T', '1'};
constexpr std::uint32_t kVersion = 1;

class Writer {
  public:
    explicit Writer(std::ostream& out) : out_(out) {}

    template <typename T>
    void put(T v) {
        static_assert(std::is_trivially_copyable_v<T>);
        out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
    }

    void ids(const std::vector<ObjectId>& v) {
        put<std::uint64_t>(v.size());
        out_.write(reinterpret_cast<const char*>(v.data()),
                   static_cast<std::streamsize>(v.size() * sizeof(ObjectId)));
    }

    void node(const IndexNode& n) {
        put<std::uint64_t>(n.code.key());
        std::uint8_t mask = 0;
        for (unsigned q = 0; q < 4; ++q) {
            if (n.children[q]) mask |= static_cast<std::uint8_t>(1u << q);
        }
        put(mask);
        put<std::uint8_t>(n.lists ? 1 : 0);
        if (n.lists) {
            ids(n.lists->interior);
            ids(n.lists->boundary);
            ids(n.lists->uncertain);
        }
        for (const auto& c : n.children) {
            if (c) node(*c);
        }
    }

  private:
    std::ostream& out_;
};

class Reader {
  public:
    explicit Reader(std::istream& in) : in_(in) {}

    template <typename T>
    T get() {
        T v;
        in_.read(reinterpret_cast<char*>(&v), sizeof(T));
        if (!in_) throw DataError("snapshot is truncated");
        return v;
    }

    std::uint64_t count(std::uint64_t limit = std::uint64_t{1} << 40) {
        const auto n = get<std::uint64_t>();
        if (n > limit) throw DataError("snapshot holds an implausible element count");
        return n;
    }

    std::vector<ObjectId> ids() {
        std::vector<ObjectId> v(count());
        in_.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(ObjectId)));
        if (!in_) throw DataError("snapshot is truncated");
        return v;
    }

    std::unique_ptr<IndexNode> node(const CellCode* expected) {
        const auto key = get<std::uint64_t>();
        CellCode code;
        try {
            code = CellCode::from_key(key);
        } catch (const std::invalid_argument&) {
            throw DataError("snapshot holds an invalid cell key");
        }
        if (expected && code != *expected) throw DataError("snapshot node stream is inconsistent");
        auto n = std::make_unique<IndexNode>(code);
        const auto mask = get<std::uint8_t>();
        if (mask > 15 || (mask != 0 && code.level() >= CellCode::kMaxLevel)) {
            throw DataError("snapshot node has an invalid child mask");
        }
        if (get<std::uint8_t>() != 0) {
            auto& lists = n->ensure_lists();
            lists.interior = ids();
            lists.boundary = ids();
            lists.uncertain = ids();
        }
        for (unsigned q = 0; q < 4; ++q) {
            if (mask & (1u << q)) {
                const CellCode child_code = code.child(q);
                n->children[q] = node(&child_code);
            }
        }
        return n;
    }

  private:
    std::istream& in_;
};

void write_geometry(Writer& w, const Geometry& g) {
    w.put(static_cast<std::uint8_t>(g.kind()));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(g.parts().size()));
    for (const auto& ring : g.parts()) {
        w.put<std::uint32_t>(static_cast<std::uint32_t>(ring.size()));
        for (const auto& c : ring) {
            w.put(c.x);
            w.put(c.y);
        }
    }
}

Geometry read_geometry(Reader& r) {
    const auto kind = r.get<std::uint8_t>();
    const auto part_count = r.get<std::uint32_t>();
    std::vector<Geometry::Ring> parts(part_count);
    for (auto& ring : parts) {
        const auto n = r.get<std::uint32_t>();
        ring.resize(n);
        for (auto& c : ring) {
            c.x = r.get<double>();
            c.y = r.get<double>();
        }
    }
    try {
        switch (static_cast<GeometryKind>(kind)) {
            case GeometryKind::Point:
                if (parts.size() != 1 || parts[0].size() != 1) break;
                return Geometry::point(parts[0][0]);
            case GeometryKind::LineString:
                if (parts.size() != 1) break;
                return Geometry::line_string(std::move(parts[0]));
            case GeometryKind::Polygon:
                return Geometry::polygon(std::move(parts));
        }
    } catch (const GeometryError& e) {
        throw DataError(std::string("snapshot holds an invalid geometry: ") + e.what());
    }
    throw DataError("snapshot holds an invalid geometry record");
}

}  // namespace

void save_snapshot(const GPTree& tree, const LookupTable& table, std::ostream& out) {
    Writer w(out);
    out.write(kMagic.data(), kMagic.size());
    w.put(kVersion);
    const auto& b = tree.extent().bounds;
    for (double v : {b.min_x, b.min_y, b.max_x, b.max_y}) w.put(v);
    w.put<std::uint32_t>(tree.config().seg);
    w.put<std::int32_t>(tree.config().max_level);
    w.put<std::int32_t>(tree.config().point_level);
    w.put<std::int32_t>(tree.config().envelope_depth);
    w.put<std::uint8_t>((tree.optimized() ? 1 : 0) | (tree.pruned() ? 2 : 0));
    w.node(tree.root());
    w.put<std::uint64_t>(tree.sub_roots().size());
    for (const auto& sub : tree.sub_roots()) w.node(*sub);

    std::vector<ObjectId> ids;
    ids.reserve(table.size());
    for (const auto& [id, e] : table) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    w.put<std::uint64_t>(ids.size());
    for (ObjectId id : ids) {
        const auto& e = table.at(id);
        w.put(id);
        write_geometry(w, e.geometry);
        w.put<std::uint64_t>(e.cells.size());
        for (const auto& c : e.cells) {
            w.put(c.cell.key());
            w.put<std::uint8_t>(c.interior ? 1 : 0);
        }
    }
    if (!out) throw DataError("failed to write snapshot");
}

void save_snapshot(const GPTree& tree, const LookupTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    save_snapshot(tree, table, out);
}

std::pair<GPTree, LookupTable> load_snapshot(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw DataError("not a GP-Tree snapshot");
    Reader r(in);
    if (r.get<std::uint32_t>() != kVersion) throw DataError("unsupported snapshot version");
    Envelope bounds;
    bounds.min_x = r.get<double>();
    bounds.min_y = r.get<double>();
    bounds.max_x = r.get<double>();
    bounds.max_y = r.get<double>();
    DecompositionConfig cfg;
    cfg.seg = r.get<std::uint32_t>();
    cfg.max_level = r.get<std::int32_t>();
    cfg.point_level = r.get<std::int32_t>();
    cfg.envelope_depth = r.get<std::int32_t>();
    const auto flags = r.get<std::uint8_t>();
    std::optional<GPTree> tree;
    try {
        tree.emplace(cfg, GridExtent(bounds));
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("snapshot header is invalid: ") + e.what());
    }
    const CellCode root_code = CellCode::root();
    auto root = r.node(&root_code);
    std::vector<std::unique_ptr<IndexNode>> subs(r.count(4));
    for (auto& s : subs) s = r.node(nullptr);
    SnapshotAccess::restore(*tree, std::move(root), std::move(subs), (flags & 1) != 0, (flags & 2) != 0);

    LookupTable table;
    const auto n = r.count();
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto id = r.get<ObjectId>();
        LookupEntry e{read_geometry(r), {}};
        e.cells.resize(r.count());
        for (auto& c : e.cells) {
            try {
                c.cell = CellCode::from_key(r.get<std::uint64_t>());
            } catch (const std::invalid_argument&) {
                throw DataError("snapshot holds an invalid cell key");
            }
            c.interior = r.get<std::uint8_t>() != 0;
        }
        table.insert(id, std::move(e));
    }
    return {std::move(*tree), std::move(table)};
}

std::pair<GPTree, LookupTable> load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    return load_snapshot(in);
}

}  // namespace gptree
